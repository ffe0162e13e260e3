#pragma once

#include <vector>

#include "crverify/fields.hpp"

namespace crv {

/// Matrix-valued function known to first order at one point: value plus one
/// partial derivative per chart coordinate. Used for frames that are built
/// numerically (Gram-Schmidt, linear solves) but still need derivatives.
struct MatJet {
    Mat v;
    std::vector<Mat> d;

    MatJet() = default;
    MatJet(Mat value, std::vector<Mat> partials) : v(std::move(value)), d(std::move(partials)) {}

    static MatJet constant(const Mat& value, std::size_t vars);

    std::size_t vars() const noexcept { return d.size(); }
    Eigen::Index rows() const noexcept { return v.rows(); }
    Eigen::Index cols() const noexcept { return v.cols(); }

    MatJet block(Eigen::Index r, Eigen::Index c, Eigen::Index nr, Eigen::Index nc) const;
    MatJet col(Eigen::Index j) const { return block(0, j, rows(), 1); }
    MatJet transpose() const;
    /// sum_i x_i d_i
    Mat directional(const Vec& x) const;
};

MatJet operator+(const MatJet& a, const MatJet& b);
MatJet operator-(const MatJet& a, const MatJet& b);
MatJet operator*(const MatJet& a, const MatJet& b);
MatJet operator*(double s, const MatJet& a);
MatJet operator*(const Mat& a, const MatJet& b);

MatJet hcat(const MatJet& a, const MatJet& b);
MatJet vcat(const MatJet& a, const MatJet& b);

/// A^{-1} B
MatJet solve(const MatJet& A, const MatJet& B);
/// s * M for a 1x1 jet s.
MatJet scalar_times(const MatJet& s, const MatJet& M);
/// s^{-1/2} for a positive 1x1 jet.
MatJet inv_sqrt(const MatJet& s);

/// Entries of a field together with their partials in its own chart.
MatJet field_jet(const ExprMatrix& f, std::span<const double> p);

/// f(x(u)) with x(u) a map whose Jacobian at u is `jac` (n x m): the partial
/// along u_i is sum_a d_a f(x) jac(a, i).
MatJet pullback_jet(const ExprMatrix& f, std::span<const double> x, const Mat& jac);

}  // namespace crv
