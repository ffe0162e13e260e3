#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crverify/geometry.hpp"

namespace crv {

struct AlmostContact {
    TensorField11 phi;
    VectorField xi;
    OneFormField eta;

    std::size_t dim() const noexcept { return phi.dim(); }
};

struct SasakiStatStructure {
    StatTriple st;
    AlmostContact acs;
    std::optional<double> lambda;
};

namespace record {
// Names shared between the checks and their consumers.
inline constexpr const char* kPhiSquared = "phi^2 = -I + eta(x)xi";
inline constexpr const char* kXiDual = "g(X,xi) = eta(X)";
inline constexpr const char* kCompatible = "g(phiX,phiY) = g(X,Y) - eta(X)eta(Y)";
inline constexpr const char* kXiUnit = "g(xi,xi) = 1";
inline constexpr const char* kPhiXi = "phi xi = 0";
inline constexpr const char* kEtaPhi = "eta o phi = 0";
inline constexpr const char* kEtaXi = "eta(xi) = 1";

inline constexpr const char* kContact = "contact metric: d eta(X,Y) = g(X,phiY)";
inline constexpr const char* kContactSkew = "contact metric: d eta(X,Y) = -g(phiX,Y)";
inline constexpr const char* kContactNoHalf = "contact metric without the 1/2 factor";

inline constexpr const char* kSasakiXi = "Sasakian: nabla^_X xi = -phiX";
inline constexpr const char* kSasakiPhi = "Sasakian: (nabla^_X phi)Y = g(X,Y)xi - eta(Y)X";

inline constexpr const char* kKPhi = "K(X,phiY) + phiK(X,Y) = 0";
inline constexpr const char* kPhiNabla = "nabla_X phiY - phi nabla*_X Y = g(Y,xi)X - g(Y,X)xi";
inline constexpr const char* kXiNabla = "nabla_X xi = phiX + g(nabla_X xi,xi)xi";
inline constexpr const char* kPhiNablaDual = "nabla*_X phiY - phi nabla_X Y = g(Y,xi)X - g(Y,X)xi";
inline constexpr const char* kXiNablaDual = "nabla*_X xi = phiX + g(nabla*_X xi,xi)xi";
}  // namespace record

CheckReport check_almost_contact(const AlmostContact& acs, const MetricField& g, const Samples& samples,
                                 double tol = kDefaultTolerance);

/// d eta(X,Y) = 1/2 (X eta(Y) - Y eta(X) - eta([X,Y])). The variant without
/// the factor 1/2 is emitted as an Info record.
CheckReport check_contact_metric(const AlmostContact& acs, const MetricField& g, const Samples& samples,
                                 double tol = kDefaultTolerance);

CheckReport check_sasakian(const AlmostContact& acs, const MetricField& g, const Samples& samples,
                           double tol = kDefaultTolerance);

/// The K-compatibility record, the phi/xi identities for nabla and their
/// duals for nabla*, followed by the delegated Sasakian records.
CheckReport check_sasakian_statistical(const SasakiStatStructure& s, const Samples& samples,
                                       double tol = kDefaultTolerance);

/// Names of the records in check_sasakian_statistical that make up the
/// characterization through nabla and nabla* (everything except the
/// delegated Levi-Civita records).
std::vector<std::string> characterization_records();

/// nabla = LeviCivita(g) + lambda K with K(X,Y) = g(X,xi) g(Y,xi) xi.
SasakiStatStructure lambda_family(const MetricField& g, const AlmostContact& acs, double lambda);

/// Structure with an explicitly given difference tensor, flat index
/// (k * n + i) * n + j.
SasakiStatStructure with_difference_tensor(const MetricField& g, const AlmostContact& acs, std::vector<Expr> K);

/// Number of singular values of phi at p above `threshold`.
std::size_t phi_rank(const AlmostContact& acs, std::span<const double> p, double threshold = 1e-8);

}  // namespace crv
