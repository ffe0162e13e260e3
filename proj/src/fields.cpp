#include "crverify/fields.hpp"

namespace crv {

ExprMatrix::ExprMatrix(std::size_t rows, std::size_t cols, std::size_t dim, std::vector<Expr> entries)
    : rows_(rows), cols_(cols), dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw std::invalid_argument("expression grid expects " + std::to_string(rows * cols) + " entries, got " +
                                    std::to_string(entries_.size()));
    }
    for (const Expr& e : entries_) {
        if (e.dim() != 0 && e.dim() != dim) {
            throw std::invalid_argument("entry declared over a chart of dimension " + std::to_string(e.dim()) +
                                        ", grid chart has " + std::to_string(dim));
        }
    }
    partials_.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        partials_[k].reserve(entries_.size());
        for (const Expr& e : entries_) partials_[k].push_back(e.diff(k));
    }
}

Mat ExprMatrix::eval(std::span<const double> p) const {
    Mat out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = entries_[r * cols_ + c].eval(p);
    return out;
}

Mat ExprMatrix::partial(std::span<const double> p, std::size_t k) const {
    Mat out(rows_, cols_);
    const auto& d = partials_.at(k);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = d[r * cols_ + c].eval(p);
    return out;
}

bool ExprMatrix::is_variable_free() const {
    for (const Expr& e : entries_)
        if (!e.is_variable_free()) return false;
    return true;
}

MetricField::MetricField(std::size_t dim, const std::vector<Expr>& upper) {
    if (upper.size() != dim * (dim + 1) / 2) {
        throw std::invalid_argument("metric upper triangle for dimension " + std::to_string(dim) + " needs " +
                                    std::to_string(dim * (dim + 1) / 2) + " entries, got " +
                                    std::to_string(upper.size()));
    }
    std::vector<Expr> full(dim * dim);
    std::size_t at = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            full[i * dim + j] = upper[at];
            full[j * dim + i] = upper[at];
            ++at;
        }
    }
    m_ = ExprMatrix(dim, dim, dim, std::move(full));
}

MetricField MetricField::from_rows(const std::vector<std::vector<Expr>>& rows) {
    const std::size_t n = rows.size();
    std::vector<Expr> upper;
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw std::invalid_argument("metric rows must form a square matrix");
        for (std::size_t j = i; j < n; ++j) upper.push_back(rows[i][j]);
    }
    return MetricField(n, upper);
}

MetricField MetricField::euclidean(std::size_t dim) {
    std::vector<double> ones(dim, 1.0);
    return diagonal(ones);
}

MetricField MetricField::diagonal(const std::vector<double>& d) {
    const std::size_t n = d.size();
    std::vector<Expr> upper;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) upper.push_back(Expr::constant(i == j ? d[i] : 0.0));
    return MetricField(n, upper);
}

bool MetricField::is_diagonal() const {
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j)
            if (!m_(i, j).is_zero()) return false;
    return true;
}

VectorField::VectorField(std::vector<Expr> components, std::size_t chart_dim) {
    const std::size_t n = components.size();
    m_ = ExprMatrix(n, 1, chart_dim == 0 ? n : chart_dim, std::move(components));
}

TensorField11::TensorField11(std::size_t dim, std::vector<Expr> row_major)
    : m_(dim, dim, dim, std::move(row_major)) {}

TensorField11 TensorField11::from_rows(const std::vector<std::vector<Expr>>& rows) {
    const std::size_t n = rows.size();
    std::vector<Expr> flat;
    for (const auto& r : rows) {
        if (r.size() != n) throw std::invalid_argument("tensor rows must form a square matrix");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return TensorField11(n, std::move(flat));
}

}  // namespace crv
