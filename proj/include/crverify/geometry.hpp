#pragma once

#include <optional>
#include <vector>

#include "crverify/fields.hpp"
#include "crverify/report.hpp"
#include "crverify/sampling.hpp"

namespace crv {

/// Connection coefficients at one point. Gamma(k, i, j) is the k-th
/// component of nabla_{e_i} e_j.
class Christoffel {
public:
    explicit Christoffel(std::size_t n = 0) : n_(n), c_(n * n * n, 0.0) {}

    std::size_t dim() const noexcept { return n_; }
    double& operator()(std::size_t k, std::size_t i, std::size_t j) { return c_[(k * n_ + i) * n_ + j]; }
    double operator()(std::size_t k, std::size_t i, std::size_t j) const { return c_[(k * n_ + i) * n_ + j]; }

    /// sum_ij Gamma^k_ij X^i Y^j
    Vec apply(const Vec& X, const Vec& Y) const;
    /// Matrix M with M(k, j) = sum_i X^i Gamma^k_ij.
    Mat along(const Vec& X) const;
    /// nabla_{e_i} e_j as a vector.
    Vec column(std::size_t i, std::size_t j) const;

    Christoffel& operator+=(const Christoffel& o);
    Christoffel& operator*=(double s);
    friend Christoffel operator-(Christoffel a, const Christoffel& b);
    friend Christoffel operator+(Christoffel a, const Christoffel& b) { return a += b; }
    friend Christoffel operator*(double s, Christoffel a) { return a *= s; }

private:
    std::size_t n_;
    std::vector<double> c_;
};

/// Levi-Civita coefficients of g at p from the Koszul formula with a numeric
/// inverse. Throws GeometryError when |det g| < 1e-12.
Christoffel levi_civita_at(const MetricField& g, std::span<const double> p);

/// Affine connection stored as  c * LeviCivita(g) + S  with S an explicit
/// coefficient grid. A plain coefficient connection has c = 0 and no metric.
class ConnField {
public:
    /// Explicit coefficients, flat index (k * n + i) * n + j.
    ConnField(std::size_t dim, std::vector<Expr> coefficients);
    ConnField(MetricField g, double lc_weight, std::vector<Expr> offset);

    std::size_t dim() const noexcept { return dim_; }
    const std::optional<MetricField>& base_metric() const noexcept { return base_; }
    double lc_weight() const noexcept { return lc_weight_; }
    const std::vector<Expr>& offset() const noexcept { return offset_; }
    const Expr& offset(std::size_t k, std::size_t i, std::size_t j) const {
        return offset_[(k * dim_ + i) * dim_ + j];
    }

    Christoffel at(std::span<const double> p) const;

    /// Full coefficient grid as expressions, available when the Levi-Civita
    /// part is symbolic (constant or diagonal metric) or absent.
    const std::optional<std::vector<Expr>>& symbolic() const noexcept { return symbolic_; }

private:
    std::size_t dim_;
    std::optional<MetricField> base_;
    double lc_weight_ = 0.0;
    std::vector<Expr> offset_;
    std::optional<std::vector<Expr>> symbolic_;
};

ConnField levi_civita(const MetricField& g);

/// nabla* = 2 LeviCivita(g) - nabla. The input's own metric part, if any,
/// must be g.
ConnField dual_connection(const ConnField& nabla, const MetricField& g);

/// (nabla_X Y)^k = X^i d_i Y^k + X^i Y^j Gamma^k_ij, as expressions. Throws
/// std::logic_error when the connection has no symbolic form.
VectorField covariant_derivative(const ConnField& conn, const VectorField& X, const VectorField& Y);
Vec covariant_derivative_at(const ConnField& conn, const VectorField& X, const VectorField& Y,
                            std::span<const double> p);

VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// sqrt(v^T G v)
double gnorm(const Mat& G, const Vec& v);

struct StatTriple {
    MetricField g;
    ConnField nabla;
    ConnField nabla_star;

    StatTriple(MetricField metric, ConnField connection);

    /// K = nabla - LeviCivita(g) at p.
    Christoffel K_at(std::span<const double> p) const;
};

CheckReport check_statistical(const StatTriple& st, const Samples& samples, double tol = kDefaultTolerance);

}  // namespace crv
