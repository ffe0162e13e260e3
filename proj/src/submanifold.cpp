#include "crverify/submanifold.hpp"

#include <algorithm>
#include <cmath>

namespace crv {

namespace {

Vec unit(std::size_t n, std::size_t i) {
    Vec e = Vec::Zero(static_cast<Eigen::Index>(n));
    e[static_cast<Eigen::Index>(i)] = 1.0;
    return e;
}

constexpr double kGramSchmidtThreshold = 1e-10;
constexpr double kRankThreshold = 1e-10;

// Smallest over largest eigenvalue of the induced Gram matrix.
double rank_ratio(const Mat& induced) {
    Eigen::SelfAdjointEigenSolver<Mat> es(induced);
    const Vec ev = es.eigenvalues();
    const double hi = ev.cwiseAbs().maxCoeff();
    return hi > 0.0 ? ev.minCoeff() / hi : 0.0;
}

MatJet zero_jet(Eigen::Index rows, Eigen::Index cols, std::size_t vars) {
    return MatJet::constant(Mat::Zero(rows, cols), vars);
}

}  // namespace

Embedding::Embedding(std::size_t m, std::vector<Expr> components) : m_(m) {
    if (m == 0) throw std::invalid_argument("embedding domain dimension must be positive");
    const std::size_t n = components.size();
    if (n < m) throw std::invalid_argument("embedding has fewer components than domain dimensions");
    std::vector<Expr> jac;
    jac.reserve(n * m);
    for (const Expr& c : components)
        for (std::size_t i = 0; i < m; ++i) jac.push_back(c.diff(i));
    map_ = ExprMatrix(n, 1, m, std::move(components));
    jac_ = ExprMatrix(n, m, m, std::move(jac));
}

MetricField induced_metric(const Embedding& emb, const MetricField& g) {
    const std::size_t n = emb.n(), m = emb.m();
    if (g.dim() != n) throw std::invalid_argument("ambient metric dimension differs from embedding target");
    const std::vector<Expr>& gamma = emb.map().entries();
    std::vector<Expr> gbar(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            gbar[a * n + b] = g(a, b).substitute(gamma);
            gbar[b * n + a] = gbar[a * n + b];
        }
    const ExprMatrix& J = emb.jacobian();
    std::vector<Expr> upper;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            Expr s;
            for (std::size_t a = 0; a < n; ++a) {
                if (J(a, i).is_zero()) continue;
                for (std::size_t b = 0; b < n; ++b) {
                    if (J(b, j).is_zero()) continue;
                    s = s + J(a, i) * gbar[a * n + b] * J(b, j);
                }
            }
            upper.push_back(s);
        }
    return MetricField(m, upper);
}

FramePoint::FramePoint(const Embedding& emb, const MetricField& g, const Vec& u)
    : m_(emb.m()), n_(emb.n()), u_(u) {
    if (static_cast<std::size_t>(u.size()) != m_) throw std::invalid_argument("domain point has wrong dimension");
    if (g.dim() != n_) throw std::invalid_argument("ambient metric dimension differs from embedding target");
    const auto su = as_span(u_);
    x_ = emb.at(su);
    J_ = field_jet(emb.jacobian(), su);
    G_ = pullback_jet(g.matrix(), as_span(x_), J_.v);
    if (!positive_definite(G_.v)) throw GeometryError("ambient metric not positive-definite at gamma(u)", u_);

    const MatJet Jt = J_.transpose();
    const MatJet JGJ = Jt * G_ * J_;
    if (rank_ratio(JGJ.v) < kRankThreshold) throw GeometryError("Jacobian rank drop", u_);

    const std::size_t k = n_ - m_;
    std::vector<MatJet> normals;
    const MatJet JtG = Jt * G_;
    for (std::size_t a = 0; a < n_ && normals.size() < k; ++a) {
        const MatJet e = MatJet::constant(unit(n_, a), m_);
        MatJet w = e - J_ * solve(JGJ, JtG * e);
        for (const MatJet& q : normals) w = w - q * (q.transpose() * G_ * w);
        const MatJet sq = w.transpose() * G_ * w;
        const double len = std::sqrt(std::max(sq.v(0, 0), 0.0));
        const double ref = std::sqrt(G_.v(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)));
        if (len <= kGramSchmidtThreshold * ref) continue;
        normals.push_back(scalar_times(inv_sqrt(sq), w));
    }
    if (normals.size() != k) throw GeometryError("normal frame construction failed", u_);

    if (k == 0) {
        N_ = zero_jet(static_cast<Eigen::Index>(n_), 0, m_);
        B_ = J_;
    } else {
        N_ = normals[0];
        for (std::size_t i = 1; i < k; ++i) N_ = hcat(N_, normals[i]);
        B_ = hcat(J_, N_);
    }
    const MatJet Bt = B_.transpose();
    const MatJet gram = Bt * G_ * B_;
    gram_ = gram.v;
    P_ = solve(gram, Bt * G_);
}

FramePoint::Parts FramePoint::split(const Vec& v) const {
    const Vec c = P_.v * v;
    return {c.head(static_cast<Eigen::Index>(m_)), c.tail(static_cast<Eigen::Index>(codim()))};
}

GWData::GWData(const FramePoint& fp, const StatTriple& st) : fp_(fp) {
    const auto sx = as_span(fp_.x());
    gamma_ = st.nabla.at(sx);
    gamma_star_ = st.nabla_star.at(sx);
    const Mat& B = fp_.basis().v;
    const Mat& P = fp_.coefficients().v;
    const Mat& J = fp_.J().v;
    for (std::size_t i = 0; i < fp_.m(); ++i) {
        const Vec dir = J.col(static_cast<Eigen::Index>(i));
        const Mat& dB = fp_.basis().d[i];
        omega_.push_back(P * (dB + gamma_.along(dir) * B));
        omega_star_.push_back(P * (dB + gamma_star_.along(dir) * B));
    }
}

Vec GWData::apply_omega(Role r, const Vec& x, const Vec& c) const {
    Vec out = Vec::Zero(static_cast<Eigen::Index>(fp_.n()));
    for (std::size_t i = 0; i < fp_.m(); ++i) {
        const double xi = x[static_cast<Eigen::Index>(i)];
        if (xi != 0.0) out += xi * (omega(r, i) * c);
    }
    return out;
}

Vec GWData::derive(Role r, const Vec& x, const MatJet& w) const {
    return apply_omega(r, x, w.v.col(0)) + w.directional(x).col(0);
}

Vec GWData::derive_ambient(Role r, const Vec& x, const MatJet& W) const {
    const Vec X = fp_.J().v * x;
    return W.directional(x).col(0) + ambient(r).apply(X, W.v.col(0));
}

Vec GWData::nabla(Role r, const Vec& x, const Vec& y) const {
    Vec c = Vec::Zero(static_cast<Eigen::Index>(fp_.n()));
    c.head(static_cast<Eigen::Index>(fp_.m())) = y;
    return apply_omega(r, x, c).head(static_cast<Eigen::Index>(fp_.m()));
}

Vec GWData::h(Role r, const Vec& x, const Vec& y) const {
    Vec c = Vec::Zero(static_cast<Eigen::Index>(fp_.n()));
    c.head(static_cast<Eigen::Index>(fp_.m())) = y;
    return apply_omega(r, x, c).tail(static_cast<Eigen::Index>(fp_.codim()));
}

Vec GWData::shape(Role r, const Vec& v, const Vec& x) const {
    Vec c = Vec::Zero(static_cast<Eigen::Index>(fp_.n()));
    c.tail(static_cast<Eigen::Index>(fp_.codim())) = v;
    return -apply_omega(r, x, c).head(static_cast<Eigen::Index>(fp_.m()));
}

Vec GWData::nabla_perp(Role r, const Vec& x, const Vec& v) const {
    Vec c = Vec::Zero(static_cast<Eigen::Index>(fp_.n()));
    c.tail(static_cast<Eigen::Index>(fp_.codim())) = v;
    return apply_omega(r, x, c).tail(static_cast<Eigen::Index>(fp_.codim()));
}

MatJet GWData::tangent_field(const MatJet& y) const {
    return vcat(y, zero_jet(static_cast<Eigen::Index>(fp_.codim()), 1, fp_.m()));
}

MatJet GWData::normal_field(const MatJet& v) const {
    return vcat(zero_jet(static_cast<Eigen::Index>(fp_.m()), 1, fp_.m()), v);
}

TFBCSplit tfbc(const AlmostContact& acs, const FramePoint& fp) {
    if (acs.dim() != fp.n()) throw std::invalid_argument("structure and embedding target dimensions differ");
    const MatJet Phi = pullback_jet(acs.phi.matrix(), as_span(fp.x()), fp.J().v);
    TFBCSplit out;
    out.S = fp.coefficients() * Phi * fp.basis();
    const auto m = static_cast<Eigen::Index>(fp.m());
    const auto k = static_cast<Eigen::Index>(fp.codim());
    out.T = out.S.v.topLeftCorner(m, m);
    out.F = out.S.v.bottomLeftCorner(k, m);
    out.B = out.S.v.topRightCorner(m, k);
    out.C = out.S.v.bottomRightCorner(k, k);
    return out;
}

Admissible embedding_guard(const Embedding& emb, const MetricField& g) {
    return [emb, g](const Vec& u) {
        try {
            const Vec x = emb.at(as_span(u));
            const Mat G = g.at(as_span(x));
            if (!positive_definite(G)) return false;
            const Mat J = emb.jacobian_at(as_span(u));
            return rank_ratio(J.transpose() * G * J) >= kRankThreshold;
        } catch (const DomainError&) {
            return false;
        }
    };
}

namespace {

CheckReport make_report(std::string title, double tol, std::size_t samples) {
    CheckReport r;
    r.title = std::move(title);
    r.tolerance = tol;
    r.samples = samples;
    return r;
}

}  // namespace

CheckReport check_gauss_weingarten(const Embedding& emb, const StatTriple& st, const Samples& samples, double tol) {
    const std::size_t S = samples.size();
    const std::size_t m = emb.m();
    const MetricField gind = induced_metric(emb, st.g);

    RecordBuilder frame("tangent/normal orthogonality", "g(J e_i, N_a) = 0", tol, S);
    RecordBuilder gauss("Gauss formula (nabla)", "nabla-bar_X Y = nabla_X Y + h(X,Y)", tol, S);
    RecordBuilder gauss_s("Gauss formula (nabla*)", "nabla-bar*_X Y = nabla*_X Y + h*(X,Y)", tol, S);
    RecordBuilder wein("Weingarten formula (nabla)", "nabla-bar_X V = -A_V X + nabla-perp_X V", tol, S);
    RecordBuilder wein_s("Weingarten formula (nabla*)", "nabla-bar*_X V = -A*_V X + nabla*-perp_X V", tol, S);
    RecordBuilder pair("shape/second-form pairing (A, h*)", "g(A_V X, Y) = g(h*(X,Y), V)", tol, S);
    RecordBuilder pair_s("shape/second-form pairing (A*, h)", "g(A*_V X, Y) = g(h(X,Y), V)", tol, S);
    RecordBuilder hsym("h symmetry", "h(X,Y) = h(Y,X)", tol, S);
    RecordBuilder hsym_s("h* symmetry", "h*(X,Y) = h*(Y,X)", tol, S);
    RecordBuilder dual("induced duality", "X g(Y,Z) = g(nabla_X Y, Z) + g(Y, nabla*_X Z)", tol, S);

    for (std::size_t s = 0; s < S; ++s) {
        const Vec& u = samples[s];
        const auto su = as_span(u);
        const FramePoint fp(emb, st.g, u);
        const GWData gw(fp, st);
        const std::size_t k = fp.codim();
        const Mat& J = fp.J().v;
        const Mat& N = fp.N().v;
        const Mat& G = fp.G().v;
        const Mat gi = fp.induced();
        const Mat gn = fp.normal_gram();
        const Christoffel lc_ind = levi_civita_at(gind, su);
        const Christoffel Kbar = gw.ambient(Role::Primal) - levi_civita_at(st.g, as_span(fp.x()));
        std::vector<Mat> dgi(m);
        for (std::size_t i = 0; i < m; ++i) dgi[i] = gind.partial(su, i);

        if (k > 0) frame.observe(s, u, {}, (J.transpose() * G * N).cwiseAbs().maxCoeff());

        for (std::size_t i = 0; i < m; ++i) {
            const Vec ei = unit(m, i);
            for (std::size_t j = 0; j < m; ++j) {
                const Vec ej = unit(m, j);
                const MatJet Y = fp.J().col(static_cast<Eigen::Index>(j));
                const Vec tanK = fp.split(Kbar.apply(J * ei, J * ej)).tangent;
                for (Role r : {Role::Primal, Role::Dual}) {
                    const Vec amb = gw.derive_ambient(r, ei, Y);
                    const Vec via = lc_ind.column(i, j) + (r == Role::Primal ? tanK : Vec(-tanK));
                    const Vec recon = J * via + N * gw.h(r, ei, ej);
                    (r == Role::Primal ? gauss : gauss_s)
                        .observe(s, u, {i, j}, gnorm(G, amb - recon), gnorm(G, amb));
                }
                if (i < j) {
                    const Vec a = gw.h(Role::Primal, ei, ej), b = gw.h(Role::Primal, ej, ei);
                    hsym.observe(s, u, {i, j}, gnorm(gn, a - b), std::max(gnorm(gn, a), gnorm(gn, b)));
                    const Vec as = gw.h(Role::Dual, ei, ej), bs = gw.h(Role::Dual, ej, ei);
                    hsym_s.observe(s, u, {i, j}, gnorm(gn, as - bs), std::max(gnorm(gn, as), gnorm(gn, bs)));
                }
                for (std::size_t l = 0; l < m; ++l) {
                    const Vec el = unit(m, l);
                    const double lhs = dgi[i](j, l);
                    const double t1 = gw.nabla(Role::Primal, ei, ej).dot(gi * el);
                    const double t2 = ej.dot(gi * gw.nabla(Role::Dual, ei, el));
                    dual.observe(s, u, {i, j, l}, std::abs(lhs - t1 - t2),
                                 std::max({std::abs(lhs), std::abs(t1), std::abs(t2)}));
                }
                for (std::size_t a = 0; a < k; ++a) {
                    const Vec ea = unit(k, a);
                    const double l1 = gw.shape(Role::Primal, ea, ei).dot(gi * ej);
                    const double r1 = gw.h(Role::Dual, ei, ej).dot(gn * ea);
                    pair.observe(s, u, {i, j, a}, std::abs(l1 - r1), std::max(std::abs(l1), std::abs(r1)));
                    const double l2 = gw.shape(Role::Dual, ea, ei).dot(gi * ej);
                    const double r2 = gw.h(Role::Primal, ei, ej).dot(gn * ea);
                    pair_s.observe(s, u, {i, j, a}, std::abs(l2 - r2), std::max(std::abs(l2), std::abs(r2)));
                }
            }
            for (std::size_t a = 0; a < k; ++a) {
                const Vec ea = unit(k, a);
                const MatJet V = fp.N().col(static_cast<Eigen::Index>(a));
                for (Role r : {Role::Primal, Role::Dual}) {
                    const Vec amb = gw.derive_ambient(r, ei, V);
                    const Vec recon = -J * gw.shape(r, ea, ei) + N * gw.nabla_perp(r, ei, ea);
                    (r == Role::Primal ? wein : wein_s).observe(s, u, {i, a}, gnorm(G, amb - recon), gnorm(G, amb));
                }
            }
        }
    }

    CheckReport r = make_report("Gauss-Weingarten data", tol, S);
    for (RecordBuilder* b : {&frame, &gauss, &gauss_s, &wein, &wein_s, &pair, &pair_s, &hsym, &hsym_s, &dual})
        r.add(std::move(*b).finish());
    return r;
}

CheckReport check_structure_identities(const Embedding& emb, const MetricField& g, const AlmostContact& acs,
                                       const Samples& samples, double tol) {
    const std::size_t S = samples.size();
    const std::size_t m = emb.m();
    RecordBuilder xi_tan("xi tangent to M", "xi in TM", tol, S);
    RecordBuilder rec_t("phiX = TX + FX", "phiX = TX + FX", tol, S);
    RecordBuilder rec_n("phiV = BV + CV", "phiV = BV + CV", tol, S);
    RecordBuilder t2("T^2 identity", "T^2X = -X + eta(X)xi - BFX", tol, S);
    RecordBuilder c2("C^2 identity", "C^2V = -V - FBV", tol, S);
    RecordBuilder ft("FT = -CF", "FTX = -CFX", tol, S);
    RecordBuilder tb("TB = -BC", "TBV = -BCV", tol, S);
    RecordBuilder tskew("T skew-symmetric", "g(TX,Y) = -g(X,TY)", tol, S);
    RecordBuilder cskew("C skew-symmetric", "g(CU,V) = -g(U,CV)", tol, S);
    RecordBuilder tphi("g(phiX,Y) = g(TX,Y)", "g(phiX,Y) = g(TX,Y)", tol, S);
    RecordBuilder cphi("g(phiU,V) = g(CU,V)", "g(phiU,V) = g(CU,V)", tol, S);
    RecordBuilder fb("F/B cross-adjointness", "g(FX,V) = -g(X,BV)", tol, S);

    for (std::size_t s = 0; s < S; ++s) {
        const Vec& u = samples[s];
        const FramePoint fp(emb, g, u);
        const TFBCSplit sp = tfbc(acs, fp);
        const std::size_t k = fp.codim();
        const auto sx = as_span(fp.x());
        const Mat& J = fp.J().v;
        const Mat& N = fp.N().v;
        const Mat& G = fp.G().v;
        const Mat gi = fp.induced();
        const Mat gn = fp.normal_gram();
        const Mat phi = acs.phi.at(sx);
        const Vec xi = acs.xi.at(sx);
        const Vec eta = acs.eta.at(sx);
        const auto xs = fp.split(xi);
        xi_tan.observe(s, u, {}, gnorm(gn, xs.normal));

        const Mat TT = sp.T * sp.T;
        for (std::size_t j = 0; j < m; ++j) {
            const Vec ej = unit(m, j);
            const Vec X = J * ej;
            const Vec px = phi * X;
            const Vec recon = J * sp.T * ej + N * sp.F * ej;
            rec_t.observe(s, u, {j}, gnorm(G, px - recon), gnorm(G, px));
            const double etaX = eta.dot(X);
            const Vec lhs = TT * ej;
            const Vec rhs = -ej + etaX * xs.tangent - sp.B * sp.F * ej;
            t2.observe(s, u, {j}, gnorm(gi, lhs - rhs), std::max(gnorm(gi, lhs), gnorm(gi, rhs)));
            const Vec a = sp.F * sp.T * ej, b = -sp.C * sp.F * ej;
            ft.observe(s, u, {j}, gnorm(gn, a - b), std::max(gnorm(gn, a), gnorm(gn, b)));
            for (std::size_t i = 0; i < m; ++i) {
                const Vec ei = unit(m, i);
                const double l = (sp.T * ei).dot(gi * ej), r = ei.dot(gi * sp.T * ej);
                tskew.observe(s, u, {i, j}, std::abs(l + r), std::max(std::abs(l), std::abs(r)));
                const double gp = (phi * J * ei).dot(G * X), gt = (sp.T * ei).dot(gi * ej);
                tphi.observe(s, u, {i, j}, std::abs(gp - gt), std::max(std::abs(gp), std::abs(gt)));
            }
            for (std::size_t a2 = 0; a2 < k; ++a2) {
                const Vec ea = unit(k, a2);
                const double l = (sp.F * ej).dot(gn * ea), r = ej.dot(gi * sp.B * ea);
                fb.observe(s, u, {j, a2}, std::abs(l + r), std::max(std::abs(l), std::abs(r)));
            }
        }
        const Mat CC = sp.C * sp.C;
        for (std::size_t a = 0; a < k; ++a) {
            const Vec ea = unit(k, a);
            const Vec V = N * ea;
            const Vec pv = phi * V;
            const Vec recon = J * sp.B * ea + N * sp.C * ea;
            rec_n.observe(s, u, {a}, gnorm(G, pv - recon), gnorm(G, pv));
            const Vec lhs = CC * ea, rhs = -ea - sp.F * sp.B * ea;
            c2.observe(s, u, {a}, gnorm(gn, lhs - rhs), std::max(gnorm(gn, lhs), gnorm(gn, rhs)));
            const Vec p = sp.T * sp.B * ea, q = -sp.B * sp.C * ea;
            tb.observe(s, u, {a}, gnorm(gi, p - q), std::max(gnorm(gi, p), gnorm(gi, q)));
            for (std::size_t b = 0; b < k; ++b) {
                const Vec eb = unit(k, b);
                const double l = (sp.C * ea).dot(gn * eb), r = ea.dot(gn * sp.C * eb);
                cskew.observe(s, u, {a, b}, std::abs(l + r), std::max(std::abs(l), std::abs(r)));
                const double gp = pv.dot(G * N * eb), gc = (sp.C * ea).dot(gn * eb);
                cphi.observe(s, u, {a, b}, std::abs(gp - gc), std::max(std::abs(gp), std::abs(gc)));
            }
        }
    }
    CheckReport r = make_report("T/F/B/C structure identities", tol, S);
    for (RecordBuilder* b : {&xi_tan, &rec_t, &rec_n, &t2, &c2, &ft, &tb, &tskew, &cskew, &tphi, &cphi, &fb})
        r.add(std::move(*b).finish());
    return r;
}

CheckReport check_prop28(const Embedding& emb, const SasakiStatStructure& sss, const Samples& samples, double tol) {
    const std::size_t S = samples.size();
    const std::size_t m = emb.m();
    const MetricField& g = sss.st.g;
    const AlmostContact& acs = sss.acs;

    RecordBuilder xi_tan("xi tangent to M", "xi in TM", tol, S);
    RecordBuilder p1("covariant derivative of T", "nabla_X TY - T nabla*_X Y = A_{FY}X + Bh*(X,Y) + g(Y,xi)X - g(Y,X)xi",
                     tol, S);
    RecordBuilder p2("covariant derivative of F", "nabla-perp_X FY - F nabla*_X Y = Ch*(X,Y) - h(X,TY)", tol, S);
    RecordBuilder p3("covariant derivative of B", "nabla_X BV - B nabla*-perp_X V = A_{CV}X - TA*_V X", tol, S);
    RecordBuilder p4("covariant derivative of C", "nabla-perp_X CV - C nabla*-perp_X V = -h(X,BV) - FA*_V X", tol, S);
    RecordBuilder r1("nabla xi along M", "nabla_X xi = TX + g(nabla_X xi, xi)xi", tol, S);
    RecordBuilder r2("h(X,xi) = FX", "h(X,xi) = FX", tol, S);

    for (std::size_t s = 0; s < S; ++s) {
        const Vec& u = samples[s];
        const FramePoint fp(emb, g, u);
        const GWData gw(fp, sss.st);
        const TFBCSplit sp = tfbc(acs, fp);
        const std::size_t k = fp.codim();
        const auto mi = static_cast<Eigen::Index>(m);
        const auto ki = static_cast<Eigen::Index>(k);
        const auto sx = as_span(fp.x());
        const Mat& J = fp.J().v;
        const Mat& G = fp.G().v;
        const Mat gi = fp.induced();
        const Mat gn = fp.normal_gram();

        const MatJet xi_jet = pullback_jet(acs.xi.matrix(), sx, J);
        const MatJet xi_c = fp.coefficients() * xi_jet;
        const Vec xi_t = xi_c.v.col(0).head(mi);
        const Vec xi_n = xi_c.v.col(0).tail(ki);
        xi_tan.observe(s, u, {}, gnorm(gn, xi_n));
        const Vec gxi = J.transpose() * G * xi_jet.v.col(0);  // g(e_j, xi)

        const MatJet Tj = sp.S.block(0, 0, mi, mi);
        const MatJet Fj = sp.S.block(mi, 0, ki, mi);
        const MatJet Bj = sp.S.block(0, mi, mi, ki);
        const MatJet Cj = sp.S.block(mi, mi, ki, ki);

        for (std::size_t i = 0; i < m; ++i) {
            const Vec ei = unit(m, i);

            // identities along xi
            const Vec dxi = gw.derive(Role::Primal, ei, xi_c);
            const Vec nxi = dxi.head(mi);
            const Vec rhs1 = sp.T * ei + nxi.dot(gi * xi_t) * xi_t;
            r1.observe(s, u, {i}, gnorm(gi, nxi - rhs1), std::max(gnorm(gi, nxi), gnorm(gi, rhs1)));
            const Vec hxi = gw.h(Role::Primal, ei, xi_t);
            const Vec fx = sp.F * ei;
            r2.observe(s, u, {i}, gnorm(gn, hxi - fx), std::max(gnorm(gn, hxi), gnorm(gn, fx)));

            for (std::size_t j = 0; j < m; ++j) {
                const Vec ej = unit(m, j);
                const MatJet ejet = MatJet::constant(ej, m);
                const Vec nstar = gw.nabla(Role::Dual, ei, ej);
                const Vec hstar = gw.h(Role::Dual, ei, ej);

                const MatJet TY = gw.tangent_field(Tj * ejet);
                const Vec lhs1 = gw.derive(Role::Primal, ei, TY).head(mi) - sp.T * nstar;
                const Vec rhs1b = gw.shape(Role::Primal, sp.F * ej, ei) + sp.B * hstar + gxi[static_cast<Eigen::Index>(j)] * ei -
                                  gi(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) * xi_t;
                p1.observe(s, u, {i, j}, gnorm(gi, lhs1 - rhs1b), std::max(gnorm(gi, lhs1), gnorm(gi, rhs1b)));

                const MatJet FY = gw.normal_field(Fj * ejet);
                const Vec lhs2 = gw.derive(Role::Primal, ei, FY).tail(ki) - sp.F * nstar;
                const Vec rhs2 = sp.C * hstar - gw.h(Role::Primal, ei, sp.T * ej);
                p2.observe(s, u, {i, j}, gnorm(gn, lhs2 - rhs2), std::max(gnorm(gn, lhs2), gnorm(gn, rhs2)));
            }
            for (std::size_t a = 0; a < k; ++a) {
                const Vec ea = unit(k, a);
                const MatJet ajet = MatJet::constant(ea, m);
                const Vec perp_star = gw.nabla_perp(Role::Dual, ei, ea);
                const Vec astar = gw.shape(Role::Dual, ea, ei);

                const MatJet BV = gw.tangent_field(Bj * ajet);
                const Vec lhs3 = gw.derive(Role::Primal, ei, BV).head(mi) - sp.B * perp_star;
                const Vec rhs3 = gw.shape(Role::Primal, sp.C * ea, ei) - sp.T * astar;
                p3.observe(s, u, {i, a}, gnorm(gi, lhs3 - rhs3), std::max(gnorm(gi, lhs3), gnorm(gi, rhs3)));

                const MatJet CV = gw.normal_field(Cj * ajet);
                const Vec lhs4 = gw.derive(Role::Primal, ei, CV).tail(ki) - sp.C * perp_star;
                const Vec rhs4 = -gw.h(Role::Primal, ei, sp.B * ea) - sp.F * astar;
                p4.observe(s, u, {i, a}, gnorm(gn, lhs4 - rhs4), std::max(gnorm(gn, lhs4), gnorm(gn, rhs4)));
            }
        }
    }
    CheckReport r = make_report("covariant derivatives of T, F, B, C", tol, S);
    for (RecordBuilder* b : {&xi_tan, &p1, &p2, &p3, &p4, &r1, &r2}) r.add(std::move(*b).finish());
    return r;
}

}  // namespace crv
