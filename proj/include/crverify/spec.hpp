#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crverify/crchecks.hpp"

namespace crv {

/// Rejected input. `location` is a dotted path into the document, with an
/// expression offset when the error is inside an expression string.
class SpecError : public std::runtime_error {
public:
    enum class Kind { Syntax, Expression, Dimension, UnknownKey, Missing, Value, Io };

    SpecError(Kind kind, std::string location, const std::string& message);

    Kind kind() const noexcept { return kind_; }
    const std::string& location() const noexcept { return location_; }
    const std::string& message() const noexcept { return message_; }

private:
    Kind kind_;
    std::string location_;
    std::string message_;
};

struct AmbientSpec {
    std::size_t dim = 0;
    std::vector<Expr> metric_upper;
    std::vector<Expr> phi;  // row-major, row = output index
    std::vector<Expr> xi;
    std::vector<Expr> eta;
    std::optional<double> lambda;
    std::optional<std::vector<Expr>> K;  // flat (k * n + i) * n + j
};

struct SubmanifoldSpec {
    std::size_t dim = 0;
    std::vector<Expr> embedding;
    std::vector<std::vector<Expr>> D;
    std::vector<std::vector<Expr>> Dperp;
};

struct SamplingSpec {
    enum class Mode { Seeded, Explicit };
    Mode mode = Mode::Seeded;
    SamplingOptions options;
    std::vector<Vec> ambient_points;
    std::vector<Vec> domain_points;
};

struct ToleranceSpec {
    double base = kDefaultTolerance;
    std::map<std::string, double> per_suite;

    double for_suite(const std::string& suite) const {
        const auto it = per_suite.find(suite);
        return it == per_suite.end() ? base : it->second;
    }
};

struct SpecFile {
    std::string origin;
    /// Canonical serialization of the accepted document; feeds the digest.
    std::string canonical;
    AmbientSpec ambient;
    std::optional<SubmanifoldSpec> submanifold;
    SamplingSpec sampling;
    ToleranceSpec tolerance;

    MetricField metric() const;
    AlmostContact structure() const;
    SasakiStatStructure sasaki_statistical() const;
    /// Throws SpecError(Missing) without a submanifold block.
    Embedding embedding() const;
    /// Throws SpecError(Missing) without a submanifold block or distributions.
    CRStructure cr_structure() const;
    bool has_distributions() const;
};

/// Parses a JSON document. Throws SpecError on the first problem.
SpecFile parse_spec(const std::string& text, const std::string& origin = "<spec>");
SpecFile load_spec(const std::string& path);

}  // namespace crv
