#pragma once

#include <string>
#include <vector>

#include "crverify/submanifold.hpp"

namespace crv {

/// Generators are vector fields on the domain chart.
struct Distribution {
    std::vector<VectorField> generators;

    std::size_t rank() const noexcept { return generators.size(); }
};

struct CRStructure {
    Embedding emb;
    SasakiStatStructure sss;
    Distribution D;
    Distribution Dperp;
};

namespace record {
inline constexpr const char* kRankSum = "rank D + rank D-perp = dim M";
inline constexpr const char* kOrthogonal = "D orthogonal to D-perp";
inline constexpr const char* kInvariant = "invariance of D";
inline constexpr const char* kAntiInvariant = "anti-invariance of D-perp";
inline constexpr const char* kXiInD = "xi in D";
inline constexpr const char* kNuInvariant = "nu invariant under phi";
inline constexpr const char* kNuOrthogonal = "phi D-perp orthogonal to nu";
inline constexpr const char* kNormalSplit = "normal bundle = phi D-perp + nu";
inline constexpr const char* kFP1 = "FP1 = 0";
inline constexpr const char* kTP2 = "TP2 = 0";
inline constexpr const char* kFFP2 = "F = FP2";
inline constexpr const char* kTTP1 = "T = TP1";
inline constexpr const char* kDecomposition = "X = P1X + P2X + eta(X)xi";
inline constexpr const char* kPhiRankD = "rank of phi on D = rank D - 1";

inline constexpr const char* kShapeF = "A_{FY}Z = A_{FZ}Y";
inline constexpr const char* kShapeFDual = "A*_{FY}Z = A*_{FZ}Y";
inline constexpr const char* kCBLeft = "A*_U BV = A*_V BU";
inline constexpr const char* kCBRight = "nabla-perp_X CV = C nabla*-perp_X V";
inline constexpr const char* kCBBridge = "C/B bridge identity";
inline constexpr const char* kFBLeft = "nabla-perp_X FY = F nabla*_X Y";
inline constexpr const char* kFBRight = "nabla_X BV = B nabla*-perp_X V";
inline constexpr const char* kFBBridge = "F/B bridge identity";

inline constexpr const char* kDInvolutive = "D involutive";
inline constexpr const char* kDCriterion = "D integrability criterion";
inline constexpr const char* kDBridge = "F[X,Y] = h(X,phiY) - h(Y,phiX)";
inline constexpr const char* kDperpInvolutive = "D-perp involutive";
inline constexpr const char* kDperpCriterion = "D-perp integrability criterion";
inline constexpr const char* kDperpBridge = "D-perp bridge identity";

inline constexpr const char* kFoliate = "foliate";

inline constexpr const char* kProductCriterion = "CR-product criterion";
inline constexpr const char* kLeafPerp = "D-perp leaf surrogate";
inline constexpr const char* kLeafD = "D leaf surrogate";
inline constexpr const char* kProductHStar = "g(h*(X,U),phiZ) = eta(X)g(phiZ,phiU)";
inline constexpr const char* kProductShape = "g(A_{phiZ}U,X) = g(nabla*_U Z,phiX) + eta(X)g(Z,U)";
inline constexpr const char* kProductNuBracket = "nu-component of nabla-perp_Z phiW - nabla-perp_W phiZ";
inline constexpr const char* kProductNuShape = "A*_lambda phiY = -A_{phi lambda}Y";
}  // namespace record

/// Role-specific record names: suffix " (h)" / " (h*)" for the second
/// fundamental forms, " (A)" / " (A*)" for shape-operator companions,
/// " (nabla)" / " (nabla*)" for connection identities.
std::string role_name(const std::string& base, Role r, const char* kind);
inline std::string geo_name(const std::string& base, Role r) { return role_name(base, r, "h"); }
inline std::string shape_name(const std::string& base, Role r) { return role_name(base, r, "A"); }
inline std::string conn_name(const std::string& base, Role r) { return role_name(base, r, "nabla"); }

namespace record {
inline constexpr const char* kDGeodesic = "D-totally geodesic";
inline constexpr const char* kDperpGeodesic = "D-perp-totally geodesic";
inline constexpr const char* kMixedGeodesic = "mixed totally geodesic";
inline constexpr const char* kUmbilic = "D-umbilic";
inline constexpr const char* kUmbilicL = "D-umbilic |L|";
inline constexpr const char* kUmbilicForcesZero = "D-umbilic forces L = 0";
inline constexpr const char* kFoliateIdentity = "h(phiX,phiY) + h(X,Y) = 0";
inline constexpr const char* kDGeodesicShape = "A_V X in D-perp for X in D";
inline constexpr const char* kDperpGeodesicShape = "A_V X in D for X in D-perp";
inline constexpr const char* kMixedGeodesicShape = "A_V X in D for X in D, in D-perp for X in D-perp";
inline constexpr const char* kMixedShape = "A_{phiV}X = phiA*_V X";
inline constexpr const char* kMixedNormal = "nabla-perp_X phiV = phi nabla*-perp_X V";
inline constexpr const char* kFoliateMixed = "A*_V phiX + phiA*_V X = 0";
}  // namespace record

/// Generator rank drop throws GeometryError.
CheckReport check_contact_cr(const CRStructure& cr, const Samples& samples, double tol = kDefaultTolerance);

CheckReport check_cr_shape_identities(const CRStructure& cr, const Samples& samples,
                                      double tol = kDefaultTolerance);

CheckReport check_integrability_D(const CRStructure& cr, const Samples& samples, double tol = kDefaultTolerance);

CheckReport check_integrability_Dperp(const CRStructure& cr, const Samples& samples,
                                      double tol = kDefaultTolerance);

CheckReport classify_geodesic(const CRStructure& cr, const Samples& samples, double tol = kDefaultTolerance);

/// Records whose preconditions (mixed totally geodesic, foliate) fail are
/// emitted as Info with the failed precondition in the note.
CheckReport check_mixed_geodesic_consequences(const CRStructure& cr, const Samples& samples,
                                              double tol = kDefaultTolerance);

CheckReport check_cr_product(const CRStructure& cr, const Samples& samples, double tol = kDefaultTolerance);

/// embedding_guard plus linear independence of all generators.
Admissible cr_guard(const CRStructure& cr);

}  // namespace crv
