#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crverify/spec.hpp"

namespace crv {

inline constexpr const char* kToolName = "verify";
inline constexpr const char* kToolVersion = "0.1.0";

enum class Suite { Ambient, Contact, Submanifold, CR, Product };

const char* suite_name(Suite s);
/// Comma-separated names; "all" selects every suite. Throws
/// std::invalid_argument on an unknown or empty name.
std::vector<Suite> parse_suites(const std::string& csv);
/// Adds prerequisites and sorts into execution order.
std::vector<Suite> with_prerequisites(std::vector<Suite> suites);

struct RunOptions {
    std::vector<Suite> suites;  // empty: all
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<double> tolerance;
};

struct SuiteResult {
    Suite suite;
    bool requested = true;
    std::vector<CheckReport> reports;

    bool passed() const;
};

struct ReportDocument {
    std::string digest;
    std::vector<SuiteResult> suites;

    bool passed() const;
    int exit_code() const { return passed() ? 0 : 1; }
};

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Throws SpecError(Missing) when a requested suite needs a block the input
/// does not have. Engine failures at a sample become failing records.
ReportDocument run(const SpecFile& spec, const RunOptions& options);

std::string render_text(const ReportDocument& doc);
std::string render_structured(const ReportDocument& doc);

}  // namespace crv
