#include "crverify/crchecks.hpp"

#include <algorithm>
#include <cmath>

namespace crv {

std::string role_name(const std::string& base, Role r, const char* kind) {
    return base + " (" + kind + (r == Role::Dual ? "*" : "") + ")";
}

namespace {

constexpr double kGramDetThreshold = 1e-10;
constexpr double kRankRel = 1e-8;

Vec unit(std::size_t n, std::size_t i) {
    Vec e = Vec::Zero(static_cast<Eigen::Index>(n));
    e[static_cast<Eigen::Index>(i)] = 1.0;
    return e;
}

Role other(Role r) { return r == Role::Primal ? Role::Dual : Role::Primal; }

/// g-orthogonal projection onto the column span of M.
Mat projector(const Mat& M, const Mat& g) {
    if (M.cols() == 0) return Mat::Zero(g.rows(), g.cols());
    const Mat gram = M.transpose() * g * M;
    return M * gram.ldlt().solve(M.transpose() * g);
}

std::size_t numeric_rank(const Mat& M) {
    if (M.cols() == 0 || M.rows() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(M);
    const Vec sv = svd.singularValues();
    const double cut = kRankRel * std::max(1.0, sv.maxCoeff());
    return static_cast<std::size_t>((sv.array() > cut).count());
}

Mat columns(const std::vector<VectorField>& gens, std::span<const double> u, std::size_t m) {
    Mat out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(gens.size()));
    for (std::size_t a = 0; a < gens.size(); ++a) out.col(static_cast<Eigen::Index>(a)) = gens[a].at(u);
    return out;
}

void check_generators(const CRStructure& cr) {
    const std::size_t m = cr.emb.m();
    for (const Distribution* d : {&cr.D, &cr.Dperp})
        for (const VectorField& v : d->generators)
            if (v.size() != m || (v.chart_dim() != 0 && v.chart_dim() != m))
                throw std::invalid_argument("distribution generator does not live on the domain chart");
}

bool independent(const Mat& M, const Mat& gi) {
    if (M.cols() == 0) return true;
    return (M.transpose() * gi * M).determinant() > kGramDetThreshold;
}

/// Everything the CR records need at one sample.
struct CRPoint {
    FramePoint fp;
    GWData gw;
    TFBCSplit sp;
    std::size_t m, k, r, s;
    Mat gi, gn, G, J, N, phi;
    Vec xi_amb, xi_t, xi_n, eta_t;
    Mat Dv, Zv;
    std::vector<MatJet> Dj, Zj;
    Mat projD, projZ, P1, P2;
    Mat Fz, nu, projNu;
    MatJet Tj, Fj, Bj, Cj;

    CRPoint(const CRStructure& cr, const Vec& u)
        : fp(cr.emb, cr.sss.st.g, u), gw(fp, cr.sss.st), sp(tfbc(cr.sss.acs, fp)) {
        m = fp.m();
        k = fp.codim();
        r = cr.D.rank();
        s = cr.Dperp.rank();
        const auto su = as_span(u);
        const auto sx = as_span(fp.x());
        gi = fp.induced();
        gn = fp.normal_gram();
        G = fp.G().v;
        J = fp.J().v;
        N = fp.N().v;
        phi = cr.sss.acs.phi.at(sx);
        xi_amb = cr.sss.acs.xi.at(sx);
        const auto xs = fp.split(xi_amb);
        xi_t = xs.tangent;
        xi_n = xs.normal;
        eta_t = J.transpose() * cr.sss.acs.eta.at(sx);

        Dv = columns(cr.D.generators, su, m);
        Zv = columns(cr.Dperp.generators, su, m);
        if (!independent(Dv, gi)) throw GeometryError("rank drop in D generators", u);
        if (!independent(Zv, gi)) throw GeometryError("rank drop in D-perp generators", u);
        for (const VectorField& v : cr.D.generators) Dj.push_back(field_jet(v.matrix(), su));
        for (const VectorField& v : cr.Dperp.generators) Zj.push_back(field_jet(v.matrix(), su));

        projD = projector(Dv, gi);
        projZ = projector(Zv, gi);
        const double xx = xi_t.dot(gi * xi_t);
        P1 = projD;
        if (xx > 0.0) P1 -= xi_t * (gi * xi_t).transpose() / xx;
        P2 = projZ;

        Fz = sp.F * Zv;
        const Mat Q = Mat::Identity(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) - projector(Fz, gn);
        std::vector<Vec> basis;
        for (Eigen::Index c = 0; c < Q.cols(); ++c) {
            Vec w = Q.col(c);
            for (const Vec& b : basis) w -= b.dot(gn * w) * b;
            const double len = gnorm(gn, w);
            if (len > 1e-10) basis.push_back(w / len);
        }
        nu = Mat(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(basis.size()));
        for (std::size_t c = 0; c < basis.size(); ++c) nu.col(static_cast<Eigen::Index>(c)) = basis[c];
        projNu = projector(nu, gn);

        const auto mi = static_cast<Eigen::Index>(m);
        const auto ki = static_cast<Eigen::Index>(k);
        Tj = sp.S.block(0, 0, mi, mi);
        Fj = sp.S.block(mi, 0, ki, mi);
        Bj = sp.S.block(0, mi, mi, ki);
        Cj = sp.S.block(mi, mi, ki, ki);
    }

    Vec d(std::size_t a) const { return Dv.col(static_cast<Eigen::Index>(a)); }
    Vec z(std::size_t a) const { return Zv.col(static_cast<Eigen::Index>(a)); }
    Vec lam(std::size_t a) const { return nu.col(static_cast<Eigen::Index>(a)); }
    double eta(const Vec& x) const { return eta_t.dot(x); }
    double tnorm(const Vec& v) const { return gnorm(gi, v); }
    double nnorm(const Vec& v) const { return gnorm(gn, v); }
    double anorm(const Vec& v) const { return gnorm(G, v); }
    /// Ambient inner product of two ambient vectors.
    double ainner(const Vec& a, const Vec& b) const { return a.dot(G * b); }

    /// Part of a tangent vector outside the column span behind `proj`.
    double outside(const Mat& proj, const Vec& v) const { return tnorm(v - proj * v); }

    /// [X,Y] for two domain fields given as jets.
    static Vec bracket(const MatJet& X, const MatJet& Y) {
        return Y.directional(X.v.col(0)).col(0) - X.directional(Y.v.col(0)).col(0);
    }

    /// D generators followed by xi.
    std::vector<Vec> d_with_xi() const {
        std::vector<Vec> out;
        for (std::size_t a = 0; a < r; ++a) out.push_back(d(a));
        out.push_back(xi_t);
        return out;
    }

    /// Tangent part of phi applied to a domain vector, as a domain vector.
    Vec T(const Vec& x) const { return sp.T * x; }
};

CheckReport make_report(std::string title, double tol, std::size_t samples) {
    CheckReport r;
    r.title = std::move(title);
    r.tolerance = tol;
    r.samples = samples;
    return r;
}

void add_all(CheckReport& rep, std::vector<RecordBuilder>& bs) {
    for (RecordBuilder& b : bs) rep.add(std::move(b).finish());
}

bool passes(double residual, double scale, double tol) { return residual <= tol * (1.0 + std::abs(scale)); }

}  // namespace

Admissible cr_guard(const CRStructure& cr) {
    const Admissible base = embedding_guard(cr.emb, cr.sss.st.g);
    return [cr, base](const Vec& u) {
        if (!base(u)) return false;
        try {
            const auto su = as_span(u);
            const Vec x = cr.emb.at(su);
            const Mat J = cr.emb.jacobian_at(su);
            const Mat gi = J.transpose() * cr.sss.st.g.at(as_span(x)) * J;
            return independent(columns(cr.D.generators, su, cr.emb.m()), gi) &&
                   independent(columns(cr.Dperp.generators, su, cr.emb.m()), gi);
        } catch (const DomainError&) {
            return false;
        }
    };
}

CheckReport check_contact_cr(const CRStructure& cr, const Samples& samples, double tol) {
    check_generators(cr);
    namespace rc = record;
    const std::size_t S = samples.size();
    std::vector<RecordBuilder> b;
    b.reserve(16);  // references below must stay valid
    auto add = [&](const char* name, const char* anchor) -> RecordBuilder& {
        b.emplace_back(name, anchor, tol, S);
        return b.back();
    };
    RecordBuilder& rank_sum = add(rc::kRankSum, "TM = D + D-perp");
    RecordBuilder& orth = add(rc::kOrthogonal, "g(X,Z) = 0, X in D, Z in D-perp");
    RecordBuilder& inv = add(rc::kInvariant, "phi(D) = D");
    RecordBuilder& anti = add(rc::kAntiInvariant, "phi(D-perp) in normal bundle");
    RecordBuilder& xi_d = add(rc::kXiInD, "xi in D");
    RecordBuilder& nu_inv = add(rc::kNuInvariant, "phi(nu) = nu");
    RecordBuilder& nu_orth = add(rc::kNuOrthogonal, "phi D-perp orthogonal to nu");
    RecordBuilder& nsplit = add(rc::kNormalSplit, "normal bundle = phi D-perp + nu");
    RecordBuilder& fp1 = add(rc::kFP1, "FP1 = 0");
    RecordBuilder& tp2 = add(rc::kTP2, "TP2 = 0");
    RecordBuilder& ffp2 = add(rc::kFFP2, "F = FP2");
    RecordBuilder& ttp1 = add(rc::kTTP1, "T = TP1");
    RecordBuilder& dec = add(rc::kDecomposition, "X = P1X + P2X + eta(X)xi");
    RecordBuilder& prank = add(rc::kPhiRankD, "dim phi(D) = rank D - 1");

    const std::size_t m = cr.emb.m();
    for (std::size_t smp = 0; smp < S; ++smp) {
        const Vec& u = samples[smp];
        const CRPoint p(cr, u);
        rank_sum.observe(smp, u, {}, std::abs(static_cast<double>(p.r + p.s) - static_cast<double>(m)));
        for (std::size_t a = 0; a < p.r; ++a)
            for (std::size_t c = 0; c < p.s; ++c) {
                const double v = p.d(a).dot(p.gi * p.z(c));
                orth.observe(smp, u, {a, c}, std::abs(v), p.tnorm(p.d(a)) * p.tnorm(p.z(c)));
            }
        for (std::size_t a = 0; a < p.r; ++a) {
            const Vec X = p.J * p.d(a);
            const Vec phx = p.phi * X;
            const Vec in_d = p.J * (p.projD * p.T(p.d(a)));
            inv.observe(smp, u, {a}, p.anorm(phx - in_d), p.anorm(phx));
        }
        for (std::size_t c = 0; c < p.s; ++c) anti.observe(smp, u, {c}, p.tnorm(p.T(p.z(c))), p.tnorm(p.z(c)));
        {
            const double res = std::hypot(p.outside(p.projD, p.xi_t), p.nnorm(p.xi_n));
            xi_d.observe(smp, u, {}, res, p.anorm(p.xi_amb));
        }
        for (Eigen::Index c = 0; c < p.nu.cols(); ++c) {
            const Vec lam = p.lam(static_cast<std::size_t>(c));
            const Vec w = p.phi * (p.N * lam);
            const Vec keep = p.N * (p.projNu * (p.sp.C * lam));
            nu_inv.observe(smp, u, {static_cast<std::size_t>(c)}, p.anorm(w - keep), p.anorm(w));
            for (Eigen::Index f = 0; f < p.Fz.cols(); ++f) {
                const double v = p.Fz.col(f).dot(p.gn * lam);
                nu_orth.observe(smp, u, {static_cast<std::size_t>(f), static_cast<std::size_t>(c)}, std::abs(v),
                                p.nnorm(p.Fz.col(f)));
            }
        }
        {
            const std::size_t rk = numeric_rank(p.Fz);
            const double res = std::abs(static_cast<double>(rk) - static_cast<double>(p.s)) +
                               std::abs(static_cast<double>(rk + static_cast<std::size_t>(p.nu.cols())) -
                                        static_cast<double>(p.k));
            nsplit.observe(smp, u, {}, res);
        }
        for (std::size_t j = 0; j < m; ++j) {
            const Vec e = unit(m, j);
            const Vec P1e = p.P1 * e, P2e = p.P2 * e;
            fp1.observe(smp, u, {j}, p.nnorm(p.sp.F * P1e), p.nnorm(p.sp.F * e));
            tp2.observe(smp, u, {j}, p.tnorm(p.T(P2e)), p.tnorm(p.T(e)));
            ffp2.observe(smp, u, {j}, p.nnorm(p.sp.F * (e - P2e)), p.nnorm(p.sp.F * e));
            ttp1.observe(smp, u, {j}, p.tnorm(p.T(e - P1e)), p.tnorm(p.T(e)));
            dec.observe(smp, u, {j}, p.tnorm(e - P1e - P2e - p.eta(e) * p.xi_t), p.tnorm(e));
        }
        {
            const Eigen::Index n = static_cast<Eigen::Index>(p.fp.n());
            Mat coeffs = Mat::Zero(n, static_cast<Eigen::Index>(p.r));
            coeffs.topRows(static_cast<Eigen::Index>(m)) = p.Dv;
            const Mat img = p.sp.S.v * coeffs;
            const Mat L = p.fp.gram().llt().matrixL();
            const std::size_t rk = numeric_rank(L.transpose() * img);
            const double expect = p.r == 0 ? 0.0 : static_cast<double>(p.r) - 1.0;
            prank.observe(smp, u, {}, std::abs(static_cast<double>(rk) - expect));
        }
    }
    CheckReport rep = make_report("contact CR structure", tol, S);
    add_all(rep, b);
    return rep;
}

CheckReport check_cr_shape_identities(const CRStructure& cr, const Samples& samples, double tol) {
    check_generators(cr);
    namespace rc = record;
    const std::size_t S = samples.size();
    const std::size_t m = cr.emb.m();
    RecordBuilder p32(rc::kShapeF, "A_{FY}Z = A_{FZ}Y, Y, Z in D-perp", tol, S);
    RecordBuilder p32s(rc::kShapeFDual, "A*_{FY}Z = A*_{FZ}Y, Y, Z in D-perp", tol, S);
    RecordBuilder cb_left(rc::kCBLeft, "A*_U BV = A*_V BU", tol, S);
    RecordBuilder cb_right(rc::kCBRight, "nabla-perp_X CV = C nabla*-perp_X V", tol, S);
    RecordBuilder p33b(rc::kCBBridge,
                       "g(nabla-perp_X CV - C nabla*-perp_X V, U) = -g(A*_U BV, X) + g(A*_V BU, X)", tol, S);
    RecordBuilder fb_left(rc::kFBLeft, "nabla-perp_X FY = F nabla*_X Y", tol, S);
    RecordBuilder fb_right(rc::kFBRight, "nabla_X BV = B nabla*-perp_X V", tol, S);
    RecordBuilder p34b(rc::kFBBridge,
                       "g(nabla-perp_X FY - F nabla*_X Y, V) = -g(nabla_X BV - B nabla*-perp_X V, Y)", tol, S);

    for (std::size_t smp = 0; smp < S; ++smp) {
        const Vec& u = samples[smp];
        const CRPoint p(cr, u);
        const GWData& gw = p.gw;
        const std::size_t k = p.k;

        for (std::size_t a = 0; a < p.s; ++a)
            for (std::size_t c = a + 1; c < p.s; ++c) {
                const Vec Fy = p.sp.F * p.z(a), Fz = p.sp.F * p.z(c);
                for (Role r : {Role::Primal, Role::Dual}) {
                    const Vec l = gw.shape(r, Fy, p.z(c)), rr = gw.shape(r, Fz, p.z(a));
                    (r == Role::Primal ? p32 : p32s)
                        .observe(smp, u, {a, c}, p.tnorm(l - rr), std::max(p.tnorm(l), p.tnorm(rr)));
                }
            }

        // C/B pieces, indexed [i][a]
        std::vector<std::vector<Vec>> right33(m, std::vector<Vec>(k));
        for (std::size_t i = 0; i < m; ++i) {
            const Vec ei = unit(m, i);
            for (std::size_t a = 0; a < k; ++a) {
                const Vec ea = unit(k, a);
                const MatJet CV = gw.normal_field(p.Cj * MatJet::constant(ea, m));
                const Vec lhs = gw.derive(Role::Primal, ei, CV).tail(static_cast<Eigen::Index>(k));
                const Vec rhs = p.sp.C * gw.nabla_perp(Role::Dual, ei, ea);
                right33[i][a] = lhs - rhs;
                cb_right.observe(smp, u, {i, a}, p.nnorm(lhs - rhs), std::max(p.nnorm(lhs), p.nnorm(rhs)));
            }
        }
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t c = a + 1; c < k; ++c) {
                const Vec l = gw.shape(Role::Dual, unit(k, a), p.sp.B * unit(k, c));
                const Vec rr = gw.shape(Role::Dual, unit(k, c), p.sp.B * unit(k, a));
                cb_left.observe(smp, u, {a, c}, p.tnorm(l - rr), std::max(p.tnorm(l), p.tnorm(rr)));
            }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t uu = 0; uu < k; ++uu)
                for (std::size_t v = 0; v < k; ++v) {
                    const Vec ei = unit(m, i);
                    const double lhs = right33[i][v].dot(p.gn * unit(k, uu));
                    const double t1 = gw.shape(Role::Dual, unit(k, uu), p.sp.B * unit(k, v)).dot(p.gi * ei);
                    const double t2 = gw.shape(Role::Dual, unit(k, v), p.sp.B * unit(k, uu)).dot(p.gi * ei);
                    p33b.observe(smp, u, {i, uu, v}, std::abs(lhs + t1 - t2),
                                 std::max({std::abs(lhs), std::abs(t1), std::abs(t2)}));
                }

        // F/B pieces
        std::vector<std::vector<Vec>> left34(m, std::vector<Vec>(m)), right34(m, std::vector<Vec>(k));
        for (std::size_t i = 0; i < m; ++i) {
            const Vec ei = unit(m, i);
            for (std::size_t j = 0; j < m; ++j) {
                const Vec ej = unit(m, j);
                const MatJet FY = gw.normal_field(p.Fj * MatJet::constant(ej, m));
                const Vec lhs = gw.derive(Role::Primal, ei, FY).tail(static_cast<Eigen::Index>(k));
                const Vec rhs = p.sp.F * gw.nabla(Role::Dual, ei, ej);
                left34[i][j] = lhs - rhs;
                fb_left.observe(smp, u, {i, j}, p.nnorm(lhs - rhs), std::max(p.nnorm(lhs), p.nnorm(rhs)));
            }
            for (std::size_t a = 0; a < k; ++a) {
                const Vec ea = unit(k, a);
                const MatJet BV = gw.tangent_field(p.Bj * MatJet::constant(ea, m));
                const Vec lhs = gw.derive(Role::Primal, ei, BV).head(static_cast<Eigen::Index>(m));
                const Vec rhs = p.sp.B * gw.nabla_perp(Role::Dual, ei, ea);
                right34[i][a] = lhs - rhs;
                fb_right.observe(smp, u, {i, a}, p.tnorm(lhs - rhs), std::max(p.tnorm(lhs), p.tnorm(rhs)));
            }
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t a = 0; a < k; ++a) {
                    const double l = left34[i][j].dot(p.gn * unit(k, a));
                    const double rr = right34[i][a].dot(p.gi * unit(m, j));
                    p34b.observe(smp, u, {i, j, a}, std::abs(l + rr), std::max(std::abs(l), std::abs(rr)));
                }
    }
    CheckReport rep = make_report("contact CR shape identities", tol, S);
    for (RecordBuilder* x : {&p32, &p32s, &cb_left, &cb_right, &p33b, &fb_left, &fb_right, &p34b}) rep.add(std::move(*x).finish());
    return rep;
}

CheckReport check_integrability_D(const CRStructure& cr, const Samples& samples, double tol) {
    check_generators(cr);
    namespace rc = record;
    const std::size_t S = samples.size();
    RecordBuilder inv(rc::kDInvolutive, "[X,Y] in D, X, Y in D", tol, S);
    RecordBuilder crit(rc::kDCriterion, "g(h(X,phiY),phiZ) = g(h(Y,phiX),phiZ)", tol, S);
    RecordBuilder bridge(rc::kDBridge, "F[X,Y] = h(X,phiY) - h(Y,phiX)", tol, S);
    for (std::size_t smp = 0; smp < S; ++smp) {
        const Vec& u = samples[smp];
        const CRPoint p(cr, u);
        for (std::size_t a = 0; a < p.r; ++a)
            for (std::size_t b = a + 1; b < p.r; ++b) {
                const Vec br = CRPoint::bracket(p.Dj[a], p.Dj[b]);
                inv.observe(smp, u, {a, b}, p.outside(p.projD, br), p.tnorm(br));
                const Vec hxy = p.gw.h(Role::Primal, p.d(a), p.T(p.d(b)));
                const Vec hyx = p.gw.h(Role::Primal, p.d(b), p.T(p.d(a)));
                for (std::size_t c = 0; c < p.s; ++c) {
                    const Vec phz = p.phi * (p.J * p.z(c));
                    const double l = p.ainner(p.N * hxy, phz), rr = p.ainner(p.N * hyx, phz);
                    crit.observe(smp, u, {a, b, c}, std::abs(l - rr), std::max(std::abs(l), std::abs(rr)));
                }
                const Vec fb = p.sp.F * br;
                const Vec rhs = hxy - hyx;
                bridge.observe(smp, u, {a, b}, p.nnorm(fb - rhs), std::max(p.nnorm(fb), p.nnorm(rhs)));
            }
    }
    CheckReport rep = make_report("integrability of D", tol, S);
    for (RecordBuilder* x : {&inv, &crit, &bridge}) rep.add(std::move(*x).finish());
    return rep;
}

CheckReport check_integrability_Dperp(const CRStructure& cr, const Samples& samples, double tol) {
    check_generators(cr);
    namespace rc = record;
    const std::size_t S = samples.size();
    RecordBuilder inv(rc::kDperpInvolutive, "[X,Y] in D-perp, X, Y in D-perp", tol, S);
    RecordBuilder crit(rc::kDperpCriterion, "A_{phiY}X - A_{phiX}Y = g(Y,xi)X - g(X,xi)Y", tol, S);
    RecordBuilder bridge(rc::kDperpBridge, "A_{phiY}X - A_{phiX}Y = -T[X,Y] - g(Y,xi)X + g(X,xi)Y", tol, S);
    for (std::size_t smp = 0; smp < S; ++smp) {
        const Vec& u = samples[smp];
        const CRPoint p(cr, u);
        for (std::size_t a = 0; a < p.s; ++a)
            for (std::size_t b = a + 1; b < p.s; ++b) {
                const Vec x = p.z(a), y = p.z(b);
                const Vec br = CRPoint::bracket(p.Zj[a], p.Zj[b]);
                inv.observe(smp, u, {a, b}, p.outside(p.projZ, br), p.tnorm(br));
                const Vec lhs = p.gw.shape(Role::Primal, p.sp.F * y, x) - p.gw.shape(Role::Primal, p.sp.F * x, y);
                const double gy = p.ainner(p.J * y, p.xi_amb), gx = p.ainner(p.J * x, p.xi_amb);
                const Vec rhs = gy * x - gx * y;
                crit.observe(smp, u, {a, b}, p.tnorm(lhs - rhs), std::max(p.tnorm(lhs), p.tnorm(rhs)));
                const Vec rhs_b = -p.T(br) - rhs;
                bridge.observe(smp, u, {a, b}, p.tnorm(lhs - rhs_b), std::max(p.tnorm(lhs), p.tnorm(rhs_b)));
            }
    }
    if (cr.Dperp.rank() <= 1) {
        crit.as_info("rank-1 D-perp: reported for information");
        bridge.as_info("rank-1 D-perp: reported for information");
    }
    CheckReport rep = make_report("integrability of D-perp", tol, S);
    for (RecordBuilder* x : {&inv, &crit, &bridge}) rep.add(std::move(*x).finish());
    return rep;
}

CheckReport classify_geodesic(const CRStructure& cr, const Samples& samples, double tol) {
    check_generators(cr);
    namespace rc = record;
    const std::size_t S = samples.size();

    struct PerRole {
        RecordBuilder dgeo, pgeo, mixed, umb, umbL, umb0, remark, sdgeo, spgeo, smixed;
    };
    auto make = [&](Role r) {
        return PerRole{
            RecordBuilder(geo_name(rc::kDGeodesic, r), "h(X,Y) = 0, X, Y in D", tol, S),
            RecordBuilder(geo_name(rc::kDperpGeodesic, r), "h(X,Y) = 0, X, Y in D-perp", tol, S),
            RecordBuilder(geo_name(rc::kMixedGeodesic, r), "h(X,Y) = 0, X in D, Y in D-perp", tol, S),
            RecordBuilder(geo_name(rc::kUmbilic, r), "h(X,Y) = g(X,Y)L, X, Y in D", tol, S),
            RecordBuilder(geo_name(rc::kUmbilicL, r), "least-squares L", tol, S),
            RecordBuilder(geo_name(rc::kUmbilicForcesZero, r), "D-umbilic with xi in D gives L = 0", tol, S),
            RecordBuilder(geo_name(rc::kFoliateIdentity, r), "h(phiX,phiY) = -h(X,Y), D involutive", tol, S),
            RecordBuilder(shape_name(rc::kDGeodesicShape, r), "A_V X in D-perp, X in D", tol, S),
            RecordBuilder(shape_name(rc::kDperpGeodesicShape, r), "A_V X in D, X in D-perp", tol, S),
            RecordBuilder(shape_name(rc::kMixedGeodesicShape, r),
                          "A_V X in D for X in D, A_V X in D-perp for X in D-perp", tol, S),
        };
    };
    PerRole roles[2] = {make(Role::Primal), make(Role::Dual)};
    RecordBuilder fol(rc::kFoliate, "D involutive", tol, S);
    bool foliate_ok = true;

    for (std::size_t smp = 0; smp < S; ++smp) {
        const Vec& u = samples[smp];
        const CRPoint p(cr, u);
        for (std::size_t a = 0; a < p.r; ++a)
            for (std::size_t b = a + 1; b < p.r; ++b) {
                const Vec br = CRPoint::bracket(p.Dj[a], p.Dj[b]);
                const double res = p.outside(p.projD, br);
                foliate_ok = foliate_ok && passes(res, p.tnorm(br), tol);
                fol.observe(smp, u, {a, b}, res, p.tnorm(br));
            }
        const double xi_res = std::hypot(p.outside(p.projD, p.xi_t), p.nnorm(p.xi_n));
        const bool xi_in_d = passes(xi_res, p.anorm(p.xi_amb), tol);

        for (Role r : {Role::Primal, Role::Dual}) {
            PerRole& R = roles[r == Role::Primal ? 0 : 1];
            const auto hh = [&](const Vec& x, const Vec& y) { return p.gw.h(r, x, y); };
            for (std::size_t a = 0; a < p.r; ++a)
                for (std::size_t b = a; b < p.r; ++b) R.dgeo.observe(smp, u, {a, b}, p.nnorm(hh(p.d(a), p.d(b))));
            for (std::size_t a = 0; a < p.s; ++a)
                for (std::size_t b = a; b < p.s; ++b) R.pgeo.observe(smp, u, {a, b}, p.nnorm(hh(p.z(a), p.z(b))));
            for (std::size_t a = 0; a < p.r; ++a)
                for (std::size_t b = 0; b < p.s; ++b) R.mixed.observe(smp, u, {a, b}, p.nnorm(hh(p.d(a), p.z(b))));

            if (p.r > 0) {
                Vec num = Vec::Zero(static_cast<Eigen::Index>(p.k));
                double den = 0.0;
                for (std::size_t a = 0; a < p.r; ++a)
                    for (std::size_t b = a; b < p.r; ++b) {
                        const double gab = p.d(a).dot(p.gi * p.d(b));
                        num += gab * hh(p.d(a), p.d(b));
                        den += gab * gab;
                    }
                const Vec L = den > 0.0 ? Vec(num / den) : Vec(num * 0.0);
                double fit = 0.0, scale = 0.0;
                for (std::size_t a = 0; a < p.r; ++a)
                    for (std::size_t b = a; b < p.r; ++b) {
                        const double gab = p.d(a).dot(p.gi * p.d(b));
                        const Vec hab = hh(p.d(a), p.d(b));
                        fit = std::max(fit, p.nnorm(hab - gab * L));
                        scale = std::max(scale, p.nnorm(hab));
                    }
                R.umb.observe(smp, u, {}, fit, scale);
                R.umbL.observe(smp, u, {}, p.nnorm(L));
                if (passes(fit, scale, tol) && xi_in_d) R.umb0.observe(smp, u, {}, p.nnorm(L));
            }
            for (std::size_t a = 0; a < p.r; ++a)
                for (std::size_t b = a; b < p.r; ++b) {
                    const Vec l = hh(p.T(p.d(a)), p.T(p.d(b)));
                    const Vec rr = hh(p.d(a), p.d(b));
                    R.remark.observe(smp, u, {a, b}, p.nnorm(l + rr), std::max(p.nnorm(l), p.nnorm(rr)));
                }
            for (std::size_t v = 0; v < p.k; ++v) {
                const Vec ev = unit(p.k, v);
                for (std::size_t a = 0; a < p.r; ++a) {
                    const Vec A = p.gw.shape(r, ev, p.d(a));
                    R.sdgeo.observe(smp, u, {a, v}, p.outside(p.projZ, A), p.tnorm(A));
                    R.smixed.observe(smp, u, {a, v}, p.outside(p.projD, A), p.tnorm(A));
                }
                for (std::size_t c = 0; c < p.s; ++c) {
                    const Vec A = p.gw.shape(r, ev, p.z(c));
                    R.spgeo.observe(smp, u, {p.r + c, v}, p.outside(p.projD, A), p.tnorm(A));
                    R.smixed.observe(smp, u, {p.r + c, v}, p.outside(p.projZ, A), p.tnorm(A));
                }
            }
        }
    }

    CheckReport rep = make_report("geodesic classification", tol, S);
    for (PerRole& R : roles) {
        R.umbL.as_info("magnitude of the fitted L");
        if (!foliate_ok) R.remark.as_info("precondition failed: foliate");
        for (RecordBuilder* x : {&R.dgeo, &R.pgeo, &R.mixed, &R.umb, &R.umbL, &R.umb0, &R.remark, &R.sdgeo, &R.spgeo,
                                 &R.smixed})
            rep.add(std::move(*x).finish());
    }
    rep.add(std::move(fol).finish());
    return rep;
}

CheckReport check_mixed_geodesic_consequences(const CRStructure& cr, const Samples& samples, double tol) {
    check_generators(cr);
    namespace rc = record;
    const std::size_t S = samples.size();
    const CheckReport flags = classify_geodesic(cr, samples, tol);
    const bool foliate = flags.at(rc::kFoliate).passed;

    struct PerRole {
        RecordBuilder shape, normal, fol;
    };
    auto make = [&](Role r) {
        const bool p = r == Role::Primal;
        return PerRole{
            RecordBuilder(conn_name(rc::kMixedShape, r), p ? "A_{phiV}X = phiA*_V X" : "A*_{phiV}X = phiA_V X", tol, S),
            RecordBuilder(conn_name(rc::kMixedNormal, r),
                          p ? "nabla-perp_X phiV = phi nabla*-perp_X V" : "nabla*-perp_X phiV = phi nabla-perp_X V",
                          tol, S),
            RecordBuilder(conn_name(rc::kFoliateMixed, r),
                          p ? "A*_V phiX + phiA*_V X = 0" : "A_V phiX + phiA_V X = 0", tol, S),
        };
    };
    PerRole roles[2] = {make(Role::Primal), make(Role::Dual)};

    for (std::size_t smp = 0; smp < S; ++smp) {
        const Vec& u = samples[smp];
        const CRPoint p(cr, u);
        const auto mi = static_cast<Eigen::Index>(p.m);
        const auto ki = static_cast<Eigen::Index>(p.k);
        for (Role r : {Role::Primal, Role::Dual}) {
            PerRole& R = roles[r == Role::Primal ? 0 : 1];
            const Role o = other(r);
            for (std::size_t a = 0; a < p.r; ++a) {
                const Vec x = p.d(a);
                for (std::size_t v = 0; v < p.k; ++v) {
                    const Vec ev = unit(p.k, v);
                    Vec coeff = Vec::Zero(mi + ki);
                    coeff.tail(ki) = ev;
                    const MatJet phiV = p.sp.S * MatJet::constant(coeff, p.m);
                    const Vec dv = p.gw.derive(r, x, phiV);
                    // tangent part of the derivative of phiV is -A_{phiV}X
                    const Vec lhs1 = p.J * (-dv.head(mi));
                    const Vec rhs1 = p.phi * (p.J * p.gw.shape(o, ev, x));
                    R.shape.observe(smp, u, {a, v}, p.anorm(lhs1 - rhs1), std::max(p.anorm(lhs1), p.anorm(rhs1)));
                    const Vec lhs2 = p.N * dv.tail(ki);
                    const Vec rhs2 = p.phi * (p.N * p.gw.nabla_perp(o, x, ev));
                    R.normal.observe(smp, u, {a, v}, p.anorm(lhs2 - rhs2), std::max(p.anorm(lhs2), p.anorm(rhs2)));
                    const Vec l3 = p.J * p.gw.shape(o, ev, p.T(x));
                    const Vec r3 = p.phi * (p.J * p.gw.shape(o, ev, x));
                    R.fol.observe(smp, u, {a, v}, p.anorm(l3 + r3), std::max(p.anorm(l3), p.anorm(r3)));
                }
            }
        }
    }

    CheckReport rep = make_report("mixed totally geodesic consequences", tol, S);
    for (Role r : {Role::Primal, Role::Dual}) {
        PerRole& R = roles[r == Role::Primal ? 0 : 1];
        const std::string mixed = geo_name(rc::kMixedGeodesic, r);
        const bool mixed_ok = flags.at(mixed).passed;
        if (!mixed_ok) {
            R.shape.as_info("precondition failed: " + mixed);
            R.normal.as_info("precondition failed: " + mixed);
        }
        if (!mixed_ok || !foliate) {
            std::string why = !foliate ? std::string(rc::kFoliate) : mixed;
            if (!foliate && !mixed_ok) why += ", " + mixed;
            R.fol.as_info("precondition failed: " + why);
        }
        for (RecordBuilder* x : {&R.shape, &R.normal, &R.fol}) rep.add(std::move(*x).finish());
    }
    return rep;
}

CheckReport check_cr_product(const CRStructure& cr, const Samples& samples, double tol) {
    check_generators(cr);
    namespace rc = record;
    const std::size_t S = samples.size();
    RecordBuilder crit(rc::kProductCriterion, "A_{phiU}X = eta(X)U, X in D + {xi}, U in D-perp", tol, S);
    RecordBuilder hstar_rec(rc::kProductHStar, "g(h*(X,U),phiZ) = eta(X)g(phiZ,phiU)", tol, S);
    RecordBuilder e31(rc::kProductShape, "g(A_{phiZ}U,X) = g(nabla*_U Z,phiX) + eta(X)g(Z,U)", tol, S);
    RecordBuilder nu_bracket(rc::kProductNuBracket, "nabla-perp_Z phiW - nabla-perp_W phiZ in phi D-perp", tol, S);
    RecordBuilder nu_shape(rc::kProductNuShape, "A*_lambda phiY = -A_{phi lambda}Y, lambda in nu", tol, S);
    RecordBuilder leafZ(conn_name(rc::kLeafPerp, Role::Primal), "nabla_Z W in D-perp, Z, W in D-perp", tol, S);
    RecordBuilder leafZs(conn_name(rc::kLeafPerp, Role::Dual), "nabla*_Z W in D-perp, Z, W in D-perp", tol, S);
    RecordBuilder leafD(conn_name(rc::kLeafD, Role::Primal), "nabla_X Y in D, X, Y in D", tol, S);
    RecordBuilder leafDs(conn_name(rc::kLeafD, Role::Dual), "nabla*_X Y in D, X, Y in D", tol, S);

    for (std::size_t smp = 0; smp < S; ++smp) {
        const Vec& u = samples[smp];
        const CRPoint p(cr, u);
        const GWData& gw = p.gw;
        const auto mi = static_cast<Eigen::Index>(p.m);
        const auto ki = static_cast<Eigen::Index>(p.k);
        const std::vector<Vec> xs = p.d_with_xi();

        for (std::size_t a = 0; a < xs.size(); ++a) {
            const Vec& x = xs[a];
            const double ex = p.eta(x);
            for (std::size_t c = 0; c < p.s; ++c) {
                const Vec U = p.z(c);
                const Vec lhs = gw.shape(Role::Primal, p.sp.F * U, x);
                const Vec rhs = ex * U;
                crit.observe(smp, u, {a, c}, p.tnorm(lhs - rhs), std::max(p.tnorm(lhs), p.tnorm(rhs)));
                for (std::size_t e = 0; e < p.s; ++e) {
                    const Vec phz = p.phi * (p.J * p.z(e));
                    const Vec phu = p.phi * (p.J * U);
                    const double l = p.ainner(p.N * gw.h(Role::Dual, x, U), phz);
                    const double rr = ex * p.ainner(phz, phu);
                    hstar_rec.observe(smp, u, {a, c, e}, std::abs(l - rr), std::max(std::abs(l), std::abs(rr)));
                }
            }
        }

        for (std::size_t i = 0; i < p.m; ++i) {
            const Vec ei = unit(p.m, i);
            for (std::size_t c = 0; c < p.s; ++c) {
                const Vec nstar = gw.derive(Role::Dual, ei, gw.tangent_field(p.Zj[c])).head(mi);
                for (std::size_t a = 0; a < p.r; ++a) {
                    const Vec x = p.d(a);
                    const double l = gw.shape(Role::Primal, p.sp.F * p.z(c), ei).dot(p.gi * x);
                    const double t1 = p.ainner(p.J * nstar, p.phi * (p.J * x));
                    const double t2 = p.eta(x) * p.z(c).dot(p.gi * ei);
                    e31.observe(smp, u, {i, a, c}, std::abs(l - t1 - t2),
                                std::max({std::abs(l), std::abs(t1), std::abs(t2)}));
                }
            }
        }

        for (std::size_t a = 0; a < p.s; ++a)
            for (std::size_t b = a + 1; b < p.s; ++b) {
                const MatJet phW = gw.normal_field(p.Fj * p.Zj[b]);
                const MatJet phZ = gw.normal_field(p.Fj * p.Zj[a]);
                const Vec v = gw.derive(Role::Primal, p.z(a), phW).tail(ki) -
                              gw.derive(Role::Primal, p.z(b), phZ).tail(ki);
                nu_bracket.observe(smp, u, {a, b}, p.nnorm(p.projNu * v), p.nnorm(v));
            }

        for (std::size_t a = 0; a < p.r; ++a)
            for (Eigen::Index c = 0; c < p.nu.cols(); ++c) {
                const Vec lam = p.lam(static_cast<std::size_t>(c));
                const Vec l = gw.shape(Role::Dual, lam, p.T(p.d(a)));
                const Vec rr = -gw.shape(Role::Primal, p.sp.C * lam, p.d(a));
                nu_shape.observe(smp, u, {a, static_cast<std::size_t>(c)}, p.tnorm(l - rr),
                            std::max(p.tnorm(l), p.tnorm(rr)));
            }

        for (Role r : {Role::Primal, Role::Dual}) {
            RecordBuilder& lz = r == Role::Primal ? leafZ : leafZs;
            RecordBuilder& ld = r == Role::Primal ? leafD : leafDs;
            for (std::size_t a = 0; a < p.s; ++a)
                for (std::size_t b = 0; b < p.s; ++b) {
                    const Vec v = gw.derive(r, p.z(a), gw.tangent_field(p.Zj[b])).head(mi);
                    lz.observe(smp, u, {a, b}, p.outside(p.projZ, v), p.tnorm(v));
                }
            for (std::size_t a = 0; a < p.r; ++a)
                for (std::size_t b = 0; b < p.r; ++b) {
                    const Vec v = gw.derive(r, p.d(a), gw.tangent_field(p.Dj[b])).head(mi);
                    ld.observe(smp, u, {a, b}, p.outside(p.projD, v), p.tnorm(v));
                }
        }
    }
    CheckReport rep = make_report("contact CR-product", tol, S);
    for (RecordBuilder* x : {&crit, &hstar_rec, &e31, &nu_bracket, &nu_shape, &leafZ, &leafZs, &leafD, &leafDs})
        rep.add(std::move(*x).finish());
    return rep;
}

}  // namespace crv
