#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crverify/fields.hpp"

namespace crv {

constexpr double kDefaultTolerance = 1e-8;

enum class RecordKind { Check, Info };

struct Witness {
    std::size_t sample = 0;
    Vec point;
    std::vector<std::size_t> indices;
};

/// One named residual family. `passed` is the conjunction over all
/// observations of residual <= tolerance * (1 + scale). Info records are
/// evaluated the same way but never affect a verdict.
struct Record {
    std::string name;
    std::string anchor;
    RecordKind kind = RecordKind::Check;
    double tolerance = kDefaultTolerance;
    double max_residual = 0.0;
    std::optional<Witness> witness;
    bool passed = true;
    std::size_t evaluations = 0;
    std::vector<double> sample_residual;
    std::vector<bool> sample_passed;
    std::string note;
};

class RecordBuilder {
public:
    RecordBuilder(std::string name, std::string anchor, double tolerance, std::size_t samples);

    void observe(std::size_t sample, const Vec& point, std::vector<std::size_t> indices, double residual,
                 double scale = 0.0);

    RecordBuilder& as_info(std::string note);
    RecordBuilder& with_note(std::string note);

    Record finish() &&;

private:
    Record r_;
};

struct CheckReport {
    std::string title;
    double tolerance = kDefaultTolerance;
    std::size_t samples = 0;
    std::vector<Record> records;

    /// All Check records passed.
    bool passed() const;
    const Record* find(std::string_view name) const;
    /// Throws std::out_of_range when absent.
    const Record& at(std::string_view name) const;
    void append(const CheckReport& other);
    void add(Record r) { records.push_back(std::move(r)); }
};

}  // namespace crv
