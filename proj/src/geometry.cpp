#include "crverify/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace crv {

Vec Christoffel::apply(const Vec& X, const Vec& Y) const {
    Vec out = Vec::Zero(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (X[i] == 0.0) continue;
            for (std::size_t j = 0; j < n_; ++j) s += (*this)(k, i, j) * X[i] * Y[j];
        }
        out[k] = s;
    }
    return out;
}

Mat Christoffel::along(const Vec& X) const {
    Mat out = Mat::Zero(n_, n_);
    for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t i = 0; i < n_; ++i) {
            if (X[i] == 0.0) continue;
            for (std::size_t j = 0; j < n_; ++j) out(k, j) += X[i] * (*this)(k, i, j);
        }
    return out;
}

Vec Christoffel::column(std::size_t i, std::size_t j) const {
    Vec out(n_);
    for (std::size_t k = 0; k < n_; ++k) out[k] = (*this)(k, i, j);
    return out;
}

Christoffel& Christoffel::operator+=(const Christoffel& o) {
    for (std::size_t t = 0; t < c_.size(); ++t) c_[t] += o.c_[t];
    return *this;
}

Christoffel& Christoffel::operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
}

Christoffel operator-(Christoffel a, const Christoffel& b) {
    for (std::size_t t = 0; t < a.c_.size(); ++t) a.c_[t] -= b.c_[t];
    return a;
}

namespace {

Vec point_of(std::span<const double> p) { return Eigen::Map<const Vec>(p.data(), static_cast<Eigen::Index>(p.size())); }

}  // namespace

Christoffel levi_civita_at(const MetricField& g, std::span<const double> p) {
    const std::size_t n = g.dim();
    Christoffel out(n);
    if (g.is_constant()) return out;
    const Mat G = g.at(p);
    Eigen::FullPivLU<Mat> lu(G);
    if (std::abs(lu.determinant()) < 1e-12) {
        throw GeometryError("metric is singular (|det| < 1e-12)", point_of(p));
    }
    const Mat Ginv = lu.inverse();
    std::vector<Mat> dG(n);
    for (std::size_t k = 0; k < n; ++k) dG[k] = g.partial(p, k);
    // first kind: [ij, l] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Vec first(n);
            for (std::size_t l = 0; l < n; ++l) first[l] = 0.5 * (dG[i](j, l) + dG[j](i, l) - dG[l](i, j));
            const Vec second = Ginv * first;
            for (std::size_t k = 0; k < n; ++k) {
                out(k, i, j) = second[k];
                out(k, j, i) = second[k];
            }
        }
    return out;
}

namespace {

std::optional<std::vector<Expr>> symbolic_levi_civita(const MetricField& g) {
    const std::size_t n = g.dim();
    if (g.is_constant()) return std::vector<Expr>(n * n * n);
    if (!g.is_diagonal()) return std::nullopt;
    std::vector<Expr> out(n * n * n);
    const ExprMatrix& m = g.matrix();
    for (std::size_t k = 0; k < n; ++k) {
        const Expr inv = Expr::constant(0.5) / g(k, k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Expr first = m.partial_expr(i, j, k) + m.partial_expr(j, i, k) - m.partial_expr(k, i, j);
                out[(k * n + i) * n + j] = inv * first;
            }
    }
    return out;
}

}  // namespace

ConnField::ConnField(std::size_t dim, std::vector<Expr> coefficients)
    : dim_(dim), offset_(std::move(coefficients)) {
    if (offset_.size() != dim * dim * dim) {
        throw std::invalid_argument("connection needs " + std::to_string(dim * dim * dim) + " coefficients, got " +
                                    std::to_string(offset_.size()));
    }
    symbolic_ = offset_;
}

ConnField::ConnField(MetricField g, double lc_weight, std::vector<Expr> offset)
    : dim_(g.dim()), lc_weight_(lc_weight), offset_(std::move(offset)) {
    if (offset_.empty()) offset_.assign(dim_ * dim_ * dim_, Expr());
    if (offset_.size() != dim_ * dim_ * dim_) {
        throw std::invalid_argument("connection offset needs " + std::to_string(dim_ * dim_ * dim_) +
                                    " coefficients, got " + std::to_string(offset_.size()));
    }
    if (lc_weight_ == 0.0) {
        symbolic_ = offset_;
    } else if (auto lc = symbolic_levi_civita(g)) {
        std::vector<Expr> full(offset_.size());
        for (std::size_t t = 0; t < full.size(); ++t) full[t] = lc_weight_ * (*lc)[t] + offset_[t];
        symbolic_ = std::move(full);
    }
    base_ = std::move(g);
}

Christoffel ConnField::at(std::span<const double> p) const {
    Christoffel out(dim_);
    if (base_ && lc_weight_ != 0.0) {
        out = levi_civita_at(*base_, p);
        out *= lc_weight_;
    }
    for (std::size_t k = 0; k < dim_; ++k)
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) {
                const Expr& e = offset_[(k * dim_ + i) * dim_ + j];
                if (!e.is_zero()) out(k, i, j) += e.eval(p);
            }
    return out;
}

ConnField levi_civita(const MetricField& g) { return ConnField(g, 1.0, {}); }

namespace {

bool same_metric(const MetricField& a, const MetricField& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j)
            if (!(a(i, j) == b(i, j))) return false;
    return true;
}

}  // namespace

ConnField dual_connection(const ConnField& nabla, const MetricField& g) {
    if (nabla.dim() != g.dim()) throw std::invalid_argument("connection and metric dimensions differ");
    if (nabla.base_metric() && nabla.lc_weight() != 0.0 && !same_metric(*nabla.base_metric(), g)) {
        throw std::invalid_argument("connection is built on a different metric than the one given");
    }
    std::vector<Expr> neg;
    neg.reserve(nabla.offset().size());
    for (const Expr& e : nabla.offset()) neg.push_back(-e);
    return ConnField(g, 2.0 - nabla.lc_weight(), std::move(neg));
}

VectorField covariant_derivative(const ConnField& conn, const VectorField& X, const VectorField& Y) {
    const std::size_t n = conn.dim();
    if (X.size() != n || Y.size() != n) throw std::invalid_argument("field and connection dimensions differ");
    if (!conn.symbolic()) {
        throw std::logic_error("connection has no symbolic coefficients (non-diagonal, non-constant metric); "
                               "use covariant_derivative_at");
    }
    const auto& G = *conn.symbolic();
    std::vector<Expr> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Expr s;
        for (std::size_t i = 0; i < n; ++i) {
            if (X[i].is_zero()) continue;
            s = s + X[i] * Y[k].diff(i);
            for (std::size_t j = 0; j < n; ++j) s = s + X[i] * Y[j] * G[(k * n + i) * n + j];
        }
        out[k] = s;
    }
    return VectorField(std::move(out), n);
}

Vec covariant_derivative_at(const ConnField& conn, const VectorField& X, const VectorField& Y,
                            std::span<const double> p) {
    const std::size_t n = conn.dim();
    if (X.size() != n || Y.size() != n) throw std::invalid_argument("field and connection dimensions differ");
    const Vec x = X.at(p);
    const Vec y = Y.at(p);
    Vec out = conn.at(p).apply(x, y);
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] != 0.0) out += x[i] * Y.partial(p, i);
    return out;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    const std::size_t n = X.size();
    if (Y.size() != n) throw std::invalid_argument("bracket of fields with different dimensions");
    std::vector<Expr> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Expr s;
        for (std::size_t i = 0; i < n; ++i) s = s + X[i] * Y[k].diff(i) - Y[i] * X[k].diff(i);
        out[k] = s;
    }
    return VectorField(std::move(out), X.chart_dim());
}

double gnorm(const Mat& G, const Vec& v) {
    const double q = v.dot(G * v);
    return std::sqrt(std::max(q, 0.0));
}

StatTriple::StatTriple(MetricField metric, ConnField connection)
    : g(std::move(metric)), nabla(std::move(connection)), nabla_star(dual_connection(nabla, g)) {}

Christoffel StatTriple::K_at(std::span<const double> p) const { return nabla.at(p) - levi_civita_at(g, p); }

CheckReport check_statistical(const StatTriple& st, const Samples& samples, double tol) {
    const std::size_t n = st.g.dim();
    const std::size_t S = samples.size();
    RecordBuilder torsion("torsion of nabla", "T(X,Y) = nabla_X Y - nabla_Y X - [X,Y] = 0", tol, S);
    RecordBuilder torsion_star("torsion of nabla*", "T*(X,Y) = 0", tol, S);
    RecordBuilder codazzi("Codazzi symmetry of nabla", "(nabla_X g)(Y,Z) = (nabla_Y g)(X,Z)", tol, S);
    RecordBuilder codazzi_star("Codazzi symmetry of nabla*", "(nabla*_X g)(Y,Z) = (nabla*_Y g)(X,Z)", tol, S);
    RecordBuilder duality("duality", "X g(Y,Z) = g(nabla_X Y, Z) + g(Y, nabla*_X Z)", tol, S);
    RecordBuilder k_sym("K symmetry", "K_X Y = K_Y X", tol, S);
    RecordBuilder k_adj("K self-adjointness", "g(K_X Y, Z) = g(Y, K_X Z)", tol, S);
    RecordBuilder k_half("K as half difference", "K(X,Y) = 1/2 (nabla_X Y - nabla*_X Y)", tol, S);
    RecordBuilder lc_compat("Levi-Civita metric compatibility", "d_k g_ij = g(nabla^_k e_i, e_j) + g(e_i, nabla^_k e_j)",
                            tol, S);

    for (std::size_t s = 0; s < S; ++s) {
        const Vec& p = samples[s];
        const auto sp = as_span(p);
        const Mat G = st.g.at(sp);
        std::vector<Mat> dG(n);
        for (std::size_t k = 0; k < n; ++k) dG[k] = st.g.partial(sp, k);
        const Christoffel Gm = st.nabla.at(sp);
        const Christoffel Gs = st.nabla_star.at(sp);
        const Christoffel LC = levi_civita_at(st.g, sp);
        const Christoffel K = Gm - LC;

        auto covg = [&](const Christoffel& C, std::size_t i, std::size_t j, std::size_t k) {
            // (nabla_i g)(e_j, e_k)
            return dG[i](j, k) - C.column(i, j).dot(G.col(k)) - C.column(i, k).dot(G.col(j));
        };

        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i < j) {
                    const Vec a = Gm.column(i, j), b = Gm.column(j, i);
                    torsion.observe(s, p, {i, j}, gnorm(G, a - b), std::max(gnorm(G, a), gnorm(G, b)));
                    const Vec as = Gs.column(i, j), bs = Gs.column(j, i);
                    torsion_star.observe(s, p, {i, j}, gnorm(G, as - bs), std::max(gnorm(G, as), gnorm(G, bs)));
                    const Vec ka = K.column(i, j), kb = K.column(j, i);
                    k_sym.observe(s, p, {i, j}, gnorm(G, ka - kb), std::max(gnorm(G, ka), gnorm(G, kb)));
                }
                const Vec half = 0.5 * (Gm.column(i, j) - Gs.column(i, j));
                const Vec kij = K.column(i, j);
                k_half.observe(s, p, {i, j}, gnorm(G, kij - half), gnorm(G, kij));
                for (std::size_t k = 0; k < n; ++k) {
                    if (i < j) {
                        const double a = covg(Gm, i, j, k), b = covg(Gm, j, i, k);
                        codazzi.observe(s, p, {i, j, k}, std::abs(a - b), std::max(std::abs(a), std::abs(b)));
                        const double as = covg(Gs, i, j, k), bs = covg(Gs, j, i, k);
                        codazzi_star.observe(s, p, {i, j, k}, std::abs(as - bs),
                                             std::max(std::abs(as), std::abs(bs)));
                    }
                    const double lhs = dG[i](j, k);
                    const double t1 = Gm.column(i, j).dot(G.col(k));
                    const double t2 = Gs.column(i, k).dot(G.col(j));
                    duality.observe(s, p, {i, j, k}, std::abs(lhs - t1 - t2),
                                    std::max({std::abs(lhs), std::abs(t1), std::abs(t2)}));
                    const double a1 = K.column(i, j).dot(G.col(k));
                    const double a2 = K.column(i, k).dot(G.col(j));
                    k_adj.observe(s, p, {i, j, k}, std::abs(a1 - a2), std::max(std::abs(a1), std::abs(a2)));
                    const double c = covg(LC, k, i, j);
                    lc_compat.observe(s, p, {k, i, j}, std::abs(c), std::abs(dG[k](i, j)));
                }
            }
    }

    CheckReport r;
    r.title = "statistical structure";
    r.tolerance = tol;
    r.samples = S;
    for (RecordBuilder* b : {&torsion, &torsion_star, &codazzi, &codazzi_star, &duality, &k_sym, &k_adj, &k_half,
                             &lc_compat})
        r.add(std::move(*b).finish());
    return r;
}

}  // namespace crv
