#include "crverify/jet.hpp"

#include <cmath>

namespace crv {

MatJet MatJet::constant(const Mat& value, std::size_t vars) {
    return MatJet(value, std::vector<Mat>(vars, Mat::Zero(value.rows(), value.cols())));
}

MatJet MatJet::block(Eigen::Index r, Eigen::Index c, Eigen::Index nr, Eigen::Index nc) const {
    MatJet out;
    out.v = v.block(r, c, nr, nc);
    out.d.reserve(d.size());
    for (const Mat& m : d) out.d.push_back(m.block(r, c, nr, nc));
    return out;
}

MatJet MatJet::transpose() const {
    MatJet out;
    out.v = v.transpose();
    for (const Mat& m : d) out.d.push_back(m.transpose());
    return out;
}

Mat MatJet::directional(const Vec& x) const {
    Mat out = Mat::Zero(v.rows(), v.cols());
    for (std::size_t i = 0; i < d.size(); ++i)
        if (x[static_cast<Eigen::Index>(i)] != 0.0) out += x[static_cast<Eigen::Index>(i)] * d[i];
    return out;
}

namespace {

void same_vars(const MatJet& a, const MatJet& b) {
    if (a.vars() != b.vars()) throw std::invalid_argument("jets over different numbers of variables");
}

}  // namespace

MatJet operator+(const MatJet& a, const MatJet& b) {
    same_vars(a, b);
    MatJet out(a.v + b.v, a.d);
    for (std::size_t i = 0; i < a.d.size(); ++i) out.d[i] += b.d[i];
    return out;
}

MatJet operator-(const MatJet& a, const MatJet& b) {
    same_vars(a, b);
    MatJet out(a.v - b.v, a.d);
    for (std::size_t i = 0; i < a.d.size(); ++i) out.d[i] -= b.d[i];
    return out;
}

MatJet operator*(const MatJet& a, const MatJet& b) {
    same_vars(a, b);
    MatJet out;
    out.v = a.v * b.v;
    out.d.reserve(a.d.size());
    for (std::size_t i = 0; i < a.d.size(); ++i) out.d.push_back(a.d[i] * b.v + a.v * b.d[i]);
    return out;
}

MatJet operator*(double s, const MatJet& a) {
    MatJet out(s * a.v, a.d);
    for (Mat& m : out.d) m *= s;
    return out;
}

MatJet operator*(const Mat& a, const MatJet& b) {
    MatJet out;
    out.v = a * b.v;
    for (const Mat& m : b.d) out.d.push_back(a * m);
    return out;
}

MatJet hcat(const MatJet& a, const MatJet& b) {
    same_vars(a, b);
    auto cat = [](const Mat& x, const Mat& y) {
        Mat m(x.rows(), x.cols() + y.cols());
        m << x, y;
        return m;
    };
    MatJet out;
    out.v = cat(a.v, b.v);
    for (std::size_t i = 0; i < a.d.size(); ++i) out.d.push_back(cat(a.d[i], b.d[i]));
    return out;
}

MatJet vcat(const MatJet& a, const MatJet& b) {
    same_vars(a, b);
    auto cat = [](const Mat& x, const Mat& y) {
        Mat m(x.rows() + y.rows(), x.cols());
        m << x, y;
        return m;
    };
    MatJet out;
    out.v = cat(a.v, b.v);
    for (std::size_t i = 0; i < a.d.size(); ++i) out.d.push_back(cat(a.d[i], b.d[i]));
    return out;
}

MatJet solve(const MatJet& A, const MatJet& B) {
    same_vars(A, B);
    Eigen::PartialPivLU<Mat> lu(A.v);
    MatJet out;
    out.v = lu.solve(B.v);
    for (std::size_t i = 0; i < A.d.size(); ++i) out.d.push_back(lu.solve(B.d[i] - A.d[i] * out.v));
    return out;
}

MatJet scalar_times(const MatJet& s, const MatJet& M) {
    same_vars(s, M);
    const double sv = s.v(0, 0);
    MatJet out(sv * M.v, {});
    for (std::size_t i = 0; i < M.d.size(); ++i) out.d.push_back(s.d[i](0, 0) * M.v + sv * M.d[i]);
    return out;
}

MatJet inv_sqrt(const MatJet& s) {
    const double v = s.v(0, 0);
    const double r = 1.0 / std::sqrt(v);
    MatJet out(Mat::Constant(1, 1, r), {});
    for (const Mat& m : s.d) out.d.push_back(Mat::Constant(1, 1, -0.5 * r / v * m(0, 0)));
    return out;
}

MatJet field_jet(const ExprMatrix& f, std::span<const double> p) {
    MatJet out;
    out.v = f.eval(p);
    for (std::size_t k = 0; k < f.dim(); ++k) out.d.push_back(f.partial(p, k));
    return out;
}

MatJet pullback_jet(const ExprMatrix& f, std::span<const double> x, const Mat& jac) {
    MatJet out;
    out.v = f.eval(x);
    const auto m = jac.cols();
    out.d.assign(static_cast<std::size_t>(m), Mat::Zero(out.v.rows(), out.v.cols()));
    for (std::size_t a = 0; a < f.dim(); ++a) {
        const Eigen::Index ai = static_cast<Eigen::Index>(a);
        if (jac.row(ai).isZero(0.0)) continue;
        const Mat da = f.partial(x, a);
        for (Eigen::Index i = 0; i < m; ++i)
            if (jac(ai, i) != 0.0) out.d[static_cast<std::size_t>(i)] += jac(ai, i) * da;
    }
    return out;
}

}  // namespace crv
