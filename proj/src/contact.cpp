#include "crverify/contact.hpp"

#include <algorithm>
#include <cmath>

namespace crv {

namespace {

void require_dims(const AlmostContact& acs, const MetricField& g) {
    const std::size_t n = g.dim();
    if (acs.phi.dim() != n || acs.xi.size() != n || acs.eta.size() != n) {
        throw std::invalid_argument("almost contact structure and metric dimensions differ");
    }
}

Vec unit(std::size_t n, std::size_t i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    return e;
}

CheckReport make_report(std::string title, double tol, std::size_t samples) {
    CheckReport r;
    r.title = std::move(title);
    r.tolerance = tol;
    r.samples = samples;
    return r;
}

}  // namespace

CheckReport check_almost_contact(const AlmostContact& acs, const MetricField& g, const Samples& samples,
                                 double tol) {
    require_dims(acs, g);
    const std::size_t n = g.dim();
    const std::size_t S = samples.size();
    RecordBuilder sq(record::kPhiSquared, "phi^2(X) = -X + eta(X)xi", tol, S);
    RecordBuilder dual(record::kXiDual, "g(X,xi) = eta(X)", tol, S);
    RecordBuilder compat(record::kCompatible, "g(phiX,phiY) = g(X,Y) - eta(X)eta(Y)", tol, S);
    RecordBuilder unitxi(record::kXiUnit, "g(xi,xi) = 1", tol, S);
    RecordBuilder phixi(record::kPhiXi, "phi xi = 0", tol, S);
    RecordBuilder etaphi(record::kEtaPhi, "eta o phi = 0", tol, S);
    RecordBuilder etaxi(record::kEtaXi, "eta(xi) = 1", tol, S);

    for (std::size_t s = 0; s < S; ++s) {
        const Vec& p = samples[s];
        const auto sp = as_span(p);
        const Mat G = g.at(sp);
        const Mat phi = acs.phi.at(sp);
        const Vec xi = acs.xi.at(sp);
        const Vec eta = acs.eta.at(sp);
        const Mat phi2 = phi * phi;
        const Vec gxi = G * xi;
        for (std::size_t j = 0; j < n; ++j) {
            const Vec e = unit(n, j);
            const Vec lhs = phi2.col(j);
            const Vec rhs = -e + eta[j] * xi;
            sq.observe(s, p, {j}, gnorm(G, lhs - rhs), std::max(gnorm(G, lhs), gnorm(G, rhs)));
            dual.observe(s, p, {j}, std::abs(gxi[j] - eta[j]), std::abs(eta[j]));
            etaphi.observe(s, p, {j}, std::abs(eta.dot(phi.col(j))));
            for (std::size_t i = 0; i <= j; ++i) {
                const double l = phi.col(i).dot(G * phi.col(j));
                const double r = G(i, j) - eta[i] * eta[j];
                compat.observe(s, p, {i, j}, std::abs(l - r), std::max(std::abs(l), std::abs(r)));
            }
        }
        unitxi.observe(s, p, {}, std::abs(xi.dot(gxi) - 1.0));
        phixi.observe(s, p, {}, gnorm(G, phi * xi));
        etaxi.observe(s, p, {}, std::abs(eta.dot(xi) - 1.0));
    }
    CheckReport r = make_report("almost contact metric structure", tol, S);
    for (RecordBuilder* b : {&sq, &dual, &compat, &unitxi, &phixi, &etaphi, &etaxi}) r.add(std::move(*b).finish());
    return r;
}

CheckReport check_contact_metric(const AlmostContact& acs, const MetricField& g, const Samples& samples,
                                 double tol) {
    require_dims(acs, g);
    const std::size_t n = g.dim();
    const std::size_t S = samples.size();
    RecordBuilder a(record::kContact, "d eta(X,Y) = g(X,phiY)", tol, S);
    RecordBuilder b(record::kContactSkew, "d eta(X,Y) = -g(phiX,Y)", tol, S);
    RecordBuilder c(record::kContactNoHalf, "X eta(Y) - Y eta(X) - eta([X,Y]) = g(X,phiY)", tol, S);
    c.as_info("convention cross-check");

    for (std::size_t s = 0; s < S; ++s) {
        const Vec& p = samples[s];
        const auto sp = as_span(p);
        const Mat G = g.at(sp);
        const Mat phi = acs.phi.at(sp);
        std::vector<Vec> deta(n);
        for (std::size_t k = 0; k < n; ++k) deta[k] = acs.eta.partial(sp, k);
        const Mat gphi = G * phi;            // (i, j) -> g(e_i, phi e_j)
        const Mat phig = phi.transpose() * G;  // (i, j) -> g(phi e_i, e_j)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                // coordinate fields commute
                const double full = deta[i][j] - deta[j][i];
                const double d = 0.5 * full;
                a.observe(s, p, {i, j}, std::abs(d - gphi(i, j)), std::max(std::abs(d), std::abs(gphi(i, j))));
                b.observe(s, p, {i, j}, std::abs(d + phig(i, j)), std::max(std::abs(d), std::abs(phig(i, j))));
                c.observe(s, p, {i, j}, std::abs(full - gphi(i, j)),
                          std::max(std::abs(full), std::abs(gphi(i, j))));
            }
    }
    CheckReport r = make_report("contact metric structure", tol, S);
    for (RecordBuilder* rb : {&a, &b, &c}) r.add(std::move(*rb).finish());
    return r;
}

CheckReport check_sasakian(const AlmostContact& acs, const MetricField& g, const Samples& samples, double tol) {
    require_dims(acs, g);
    const std::size_t n = g.dim();
    const std::size_t S = samples.size();
    RecordBuilder a(record::kSasakiXi, "nabla^_X xi = -phiX", tol, S);
    RecordBuilder b(record::kSasakiPhi, "(nabla^_X phi)Y = g(X,Y)xi - eta(Y)X", tol, S);

    for (std::size_t s = 0; s < S; ++s) {
        const Vec& p = samples[s];
        const auto sp = as_span(p);
        const Mat G = g.at(sp);
        const Mat phi = acs.phi.at(sp);
        const Vec xi = acs.xi.at(sp);
        const Vec eta = acs.eta.at(sp);
        const Christoffel LC = levi_civita_at(g, sp);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec e = unit(n, i);
            const Mat dphi = acs.phi.partial(sp, i);
            const Vec nxi = acs.xi.partial(sp, i) + LC.apply(e, xi);
            const Vec phix = phi.col(i);
            a.observe(s, p, {i}, gnorm(G, nxi + phix), std::max(gnorm(G, nxi), gnorm(G, phix)));
            for (std::size_t j = 0; j < n; ++j) {
                const Vec lhs = dphi.col(j) + LC.apply(e, phi.col(j)) - phi * LC.column(i, j);
                const Vec rhs = G(i, j) * xi - eta[j] * e;
                b.observe(s, p, {i, j}, gnorm(G, lhs - rhs), std::max(gnorm(G, lhs), gnorm(G, rhs)));
            }
        }
    }
    CheckReport r = make_report("Sasakian structure", tol, S);
    r.add(std::move(a).finish());
    r.add(std::move(b).finish());
    return r;
}

CheckReport check_sasakian_statistical(const SasakiStatStructure& sss, const Samples& samples, double tol) {
    const MetricField& g = sss.st.g;
    const AlmostContact& acs = sss.acs;
    require_dims(acs, g);
    const std::size_t n = g.dim();
    const std::size_t S = samples.size();
    RecordBuilder kphi(record::kKPhi, "K(X,phiY) + phiK(X,Y) = 0", tol, S);
    RecordBuilder pn(record::kPhiNabla, "nabla_X phiY - phi nabla*_X Y = g(Y,xi)X - g(Y,X)xi", tol, S);
    RecordBuilder xn(record::kXiNabla, "nabla_X xi = phiX + g(nabla_X xi,xi)xi", tol, S);
    RecordBuilder pnd(record::kPhiNablaDual, "nabla*_X phiY - phi nabla_X Y = g(Y,xi)X - g(Y,X)xi", tol, S);
    RecordBuilder xnd(record::kXiNablaDual, "nabla*_X xi = phiX + g(nabla*_X xi,xi)xi", tol, S);

    for (std::size_t s = 0; s < S; ++s) {
        const Vec& p = samples[s];
        const auto sp = as_span(p);
        const Mat G = g.at(sp);
        const Mat phi = acs.phi.at(sp);
        const Vec xi = acs.xi.at(sp);
        const Vec gxi = G * xi;
        const Christoffel Gm = sss.st.nabla.at(sp);
        const Christoffel Gs = sss.st.nabla_star.at(sp);
        const Christoffel K = Gm - levi_civita_at(g, sp);

        for (std::size_t i = 0; i < n; ++i) {
            const Vec e = unit(n, i);
            const Mat dphi = acs.phi.partial(sp, i);
            const Vec dxi = acs.xi.partial(sp, i);
            const Vec phix = phi.col(i);

            auto xi_record = [&](RecordBuilder& rb, const Christoffel& C) {
                const Vec v = dxi + C.apply(e, xi);
                const Vec rhs = phix + v.dot(gxi) * xi;
                rb.observe(s, p, {i}, gnorm(G, v - rhs), std::max(gnorm(G, v), gnorm(G, rhs)));
            };
            xi_record(xn, Gm);
            xi_record(xnd, Gs);

            for (std::size_t j = 0; j < n; ++j) {
                const Vec t1 = K.apply(e, phi.col(j));
                const Vec t2 = phi * K.column(i, j);
                kphi.observe(s, p, {i, j}, gnorm(G, t1 + t2), std::max(gnorm(G, t1), gnorm(G, t2)));

                const Vec rhs = gxi[j] * e - G(i, j) * xi;
                auto phi_record = [&](RecordBuilder& rb, const Christoffel& A, const Christoffel& B) {
                    const Vec lhs = dphi.col(j) + A.apply(e, phi.col(j)) - phi * B.column(i, j);
                    rb.observe(s, p, {i, j}, gnorm(G, lhs - rhs), std::max(gnorm(G, lhs), gnorm(G, rhs)));
                };
                phi_record(pn, Gm, Gs);
                phi_record(pnd, Gs, Gm);
            }
        }
    }
    CheckReport r = make_report("Sasakian statistical structure", tol, S);
    for (RecordBuilder* rb : {&kphi, &pn, &xn, &pnd, &xnd}) r.add(std::move(*rb).finish());
    r.append(check_sasakian(acs, g, samples, tol));
    return r;
}

std::vector<std::string> characterization_records() {
    return {record::kKPhi, record::kPhiNabla, record::kXiNabla, record::kPhiNablaDual, record::kXiNablaDual};
}

namespace {

std::vector<Expr> lambda_tensor(const MetricField& g, const AlmostContact& acs, double lambda) {
    const std::size_t n = g.dim();
    std::vector<Expr> gxi(n);
    for (std::size_t i = 0; i < n; ++i) {
        Expr s;
        for (std::size_t l = 0; l < n; ++l) s = s + g(i, l) * acs.xi[l];
        gxi[i] = s;
    }
    std::vector<Expr> K(n * n * n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) K[(k * n + i) * n + j] = lambda * gxi[i] * gxi[j] * acs.xi[k];
    return K;
}

}  // namespace

SasakiStatStructure lambda_family(const MetricField& g, const AlmostContact& acs, double lambda) {
    require_dims(acs, g);
    SasakiStatStructure s{StatTriple(g, ConnField(g, 1.0, lambda_tensor(g, acs, lambda))), acs, lambda};
    return s;
}

SasakiStatStructure with_difference_tensor(const MetricField& g, const AlmostContact& acs, std::vector<Expr> K) {
    require_dims(acs, g);
    return SasakiStatStructure{StatTriple(g, ConnField(g, 1.0, std::move(K))), acs, std::nullopt};
}

std::size_t phi_rank(const AlmostContact& acs, std::span<const double> p, double threshold) {
    Eigen::JacobiSVD<Mat> svd(acs.phi.at(p));
    const Vec sv = svd.singularValues();
    return static_cast<std::size_t>((sv.array() > threshold).count());
}

}  // namespace crv
