#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "crverify/expr.hpp"

namespace crv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline std::span<const double> as_span(const Vec& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

/// Thrown for geometric preconditions that fail at a concrete point
/// (singular metric, rank drop, degenerate Gram matrix).
class GeometryError : public std::runtime_error {
public:
    GeometryError(const std::string& what, Vec point) : std::runtime_error(what), point_(std::move(point)) {}
    const Vec& point() const noexcept { return point_; }

private:
    Vec point_;
};

/// Dense grid of expressions over a chart of dimension `dim`, with first
/// partials precomputed.
class ExprMatrix {
public:
    ExprMatrix() = default;
    /// `entries` is row-major, rows*cols long.
    ExprMatrix(std::size_t rows, std::size_t cols, std::size_t dim, std::vector<Expr> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t dim() const noexcept { return dim_; }

    const Expr& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    const std::vector<Expr>& entries() const noexcept { return entries_; }

    Mat eval(std::span<const double> p) const;
    /// d/dx_k of every entry.
    Mat partial(std::span<const double> p, std::size_t k) const;
    const Expr& partial_expr(std::size_t k, std::size_t r, std::size_t c) const {
        return partials_[k][r * cols_ + c];
    }

    bool is_variable_free() const;

private:
    std::size_t rows_ = 0, cols_ = 0, dim_ = 0;
    std::vector<Expr> entries_;
    std::vector<std::vector<Expr>> partials_;
};

class MetricField {
public:
    MetricField() = default;
    /// Upper triangle in row order: g11, g12, ..., g1n, g22, ..., gnn.
    MetricField(std::size_t dim, const std::vector<Expr>& upper);
    /// Full square matrix; only entries with i <= j are read.
    static MetricField from_rows(const std::vector<std::vector<Expr>>& rows);
    static MetricField euclidean(std::size_t dim);
    static MetricField diagonal(const std::vector<double>& d);

    std::size_t dim() const noexcept { return m_.rows(); }
    const Expr& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const ExprMatrix& matrix() const noexcept { return m_; }

    Mat at(std::span<const double> p) const { return m_.eval(p); }
    Mat partial(std::span<const double> p, std::size_t k) const { return m_.partial(p, k); }

    bool is_constant() const { return m_.is_variable_free(); }
    bool is_diagonal() const;

private:
    ExprMatrix m_;
};

class VectorField {
public:
    VectorField() = default;
    /// `chart_dim` is the dimension of the chart the components live on;
    /// defaults to the component count.
    explicit VectorField(std::vector<Expr> components, std::size_t chart_dim = 0);

    std::size_t size() const noexcept { return m_.rows(); }
    std::size_t chart_dim() const noexcept { return m_.dim(); }
    const Expr& operator[](std::size_t i) const { return m_(i, 0); }
    std::vector<Expr> components() const { return m_.entries(); }
    const ExprMatrix& matrix() const noexcept { return m_; }

    Vec at(std::span<const double> p) const { return m_.eval(p); }
    Vec partial(std::span<const double> p, std::size_t k) const { return m_.partial(p, k); }

private:
    ExprMatrix m_;
};

class OneFormField : public VectorField {
public:
    using VectorField::VectorField;
};

/// (1,1) tensor; row is the output index.
class TensorField11 {
public:
    TensorField11() = default;
    TensorField11(std::size_t dim, std::vector<Expr> row_major);
    static TensorField11 from_rows(const std::vector<std::vector<Expr>>& rows);

    std::size_t dim() const noexcept { return m_.rows(); }
    const Expr& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const ExprMatrix& matrix() const noexcept { return m_; }

    Mat at(std::span<const double> p) const { return m_.eval(p); }
    Mat partial(std::span<const double> p, std::size_t k) const { return m_.partial(p, k); }

private:
    ExprMatrix m_;
};

}  // namespace crv
