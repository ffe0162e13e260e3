#pragma once

#include <array>
#include <vector>

#include "crverify/contact.hpp"
#include "crverify/jet.hpp"

namespace crv {

/// Map from an m-dimensional domain chart into an n-dimensional ambient chart.
class Embedding {
public:
    Embedding(std::size_t m, std::vector<Expr> components);

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return map_.rows(); }
    const ExprMatrix& map() const noexcept { return map_; }
    /// n x m; its partials are the Hessian slices.
    const ExprMatrix& jacobian() const noexcept { return jac_; }

    Vec at(std::span<const double> u) const { return map_.eval(u); }
    Mat jacobian_at(std::span<const double> u) const { return jac_.eval(u); }

private:
    std::size_t m_;
    ExprMatrix map_;
    ExprMatrix jac_;
};

/// g_ij = gbar(d_i gamma, d_j gamma) as expressions in the domain chart.
MetricField induced_metric(const Embedding& emb, const MetricField& g_ambient);

/// Tangent and normal bases at one domain point, with first-order jets so
/// that fields expressed in the moving frame can be differentiated.
///
/// The normal basis is Gram-Schmidt of the ambient coordinate vectors, in
/// coordinate order, against the tangent space; a candidate whose remainder
/// is below 1e-10 of its own length is discarded. The result is orthonormal.
class FramePoint {
public:
    FramePoint(const Embedding& emb, const MetricField& g, const Vec& u);

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t codim() const noexcept { return n_ - m_; }

    const Vec& u() const noexcept { return u_; }
    const Vec& x() const noexcept { return x_; }

    const MatJet& J() const noexcept { return J_; }
    const MatJet& N() const noexcept { return N_; }
    const MatJet& G() const noexcept { return G_; }
    /// [J | N]
    const MatJet& basis() const noexcept { return B_; }
    /// Coefficient map Gram^{-1} B^T G: ambient vector to frame coefficients.
    const MatJet& coefficients() const noexcept { return P_; }

    /// Gram matrix of the frame, B^T G B.
    const Mat& gram() const noexcept { return gram_; }
    Mat induced() const { return gram_.topLeftCorner(m_, m_); }
    Mat normal_gram() const { return gram_.bottomRightCorner(codim(), codim()); }

    struct Parts {
        Vec tangent;
        Vec normal;
    };
    /// v = J a + N b, solved through the Gram matrix.
    Parts split(const Vec& v) const;
    Vec frame_coefficients(const Vec& v) const { return P_.v * v; }

    double tangent_norm(const Vec& a) const { return gnorm(induced(), a); }
    double normal_norm(const Vec& b) const { return gnorm(normal_gram(), b); }
    double frame_norm(const Vec& c) const { return gnorm(gram_, c); }
    double frame_inner(const Vec& a, const Vec& b) const { return a.dot(gram_ * b); }

private:
    std::size_t m_, n_;
    Vec u_, x_;
    MatJet J_, N_, G_, B_, P_;
    Mat gram_;
};

enum class Role { Primal, Dual };

/// Gauss-Weingarten data at one frame point. Fields along the map are given
/// by moving-frame coefficient jets w (n x 1): the field is B w, tangent
/// coefficients first.
class GWData {
public:
    GWData(const FramePoint& fp, const StatTriple& st);

    const FramePoint& frame() const noexcept { return fp_; }
    const Christoffel& ambient(Role r) const { return r == Role::Primal ? gamma_ : gamma_star_; }

    /// Frame coefficients of nabla-bar_{e_i} of the frame vectors, as a
    /// matrix whose column c is the derivative of basis vector c.
    const Mat& omega(Role r, std::size_t i) const { return r == Role::Primal ? omega_[i] : omega_star_[i]; }

    /// Frame coefficients of nabla-bar_X (B w), X = J x.
    Vec derive(Role r, const Vec& x, const MatJet& w) const;
    /// Same derivative computed directly in the ambient chart:
    /// d_x W + Gamma(J x, W).
    Vec derive_ambient(Role r, const Vec& x, const MatJet& W) const;

    /// Tensorial pieces for constant-coefficient arguments.
    Vec nabla(Role r, const Vec& x, const Vec& y) const;
    Vec h(Role r, const Vec& x, const Vec& y) const;
    /// A_V X with V = N v.
    Vec shape(Role r, const Vec& v, const Vec& x) const;
    Vec nabla_perp(Role r, const Vec& x, const Vec& v) const;

    /// Tangent coefficients, normal coefficients zero.
    MatJet tangent_field(const MatJet& y) const;
    MatJet normal_field(const MatJet& v) const;

private:
    Vec apply_omega(Role r, const Vec& x, const Vec& c) const;

    FramePoint fp_;
    Christoffel gamma_, gamma_star_;
    std::vector<Mat> omega_, omega_star_;
};

/// phi in the frame [J | N]: S = [[T, B], [F, C]].
struct TFBCSplit {
    Mat T, F, B, C;
    MatJet S;
};

TFBCSplit tfbc(const AlmostContact& acs, const FramePoint& fp);

CheckReport check_gauss_weingarten(const Embedding& emb, const StatTriple& st, const Samples& samples,
                                   double tol = kDefaultTolerance);

CheckReport check_structure_identities(const Embedding& emb, const MetricField& g, const AlmostContact& acs,
                                       const Samples& samples, double tol = kDefaultTolerance);

CheckReport check_prop28(const Embedding& emb, const SasakiStatStructure& sss, const Samples& samples,
                         double tol = kDefaultTolerance);

/// Admits domain points where the ambient metric at gamma(u) is
/// positive-definite and the Jacobian has full rank.
Admissible embedding_guard(const Embedding& emb, const MetricField& g);

}  // namespace crv
