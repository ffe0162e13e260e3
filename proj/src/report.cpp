#include "crverify/report.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace crv {

RecordBuilder::RecordBuilder(std::string name, std::string anchor, double tolerance, std::size_t samples) {
    r_.name = std::move(name);
    r_.anchor = std::move(anchor);
    r_.tolerance = tolerance;
    r_.sample_residual.assign(samples, 0.0);
    r_.sample_passed.assign(samples, true);
}

void RecordBuilder::observe(std::size_t sample, const Vec& point, std::vector<std::size_t> indices,
                            double residual, double scale) {
    const bool finite = std::isfinite(residual) && std::isfinite(scale);
    const double value = finite ? std::abs(residual) : std::numeric_limits<double>::infinity();  // sqrt(-0.0) is -0.0
    const bool ok = finite && value <= r_.tolerance * (1.0 + std::abs(scale));

    ++r_.evaluations;
    if (sample >= r_.sample_residual.size()) {
        r_.sample_residual.resize(sample + 1, 0.0);
        r_.sample_passed.resize(sample + 1, true);
    }
    if (value > r_.sample_residual[sample]) r_.sample_residual[sample] = value;
    if (!ok) {
        r_.sample_passed[sample] = false;
        r_.passed = false;
    }
    if (!r_.witness || value > r_.max_residual) {
        r_.max_residual = value;
        r_.witness = Witness{sample, point, std::move(indices)};
    }
}

RecordBuilder& RecordBuilder::as_info(std::string note) {
    r_.kind = RecordKind::Info;
    if (!note.empty()) r_.note = std::move(note);
    return *this;
}

RecordBuilder& RecordBuilder::with_note(std::string note) {
    r_.note = std::move(note);
    return *this;
}

Record RecordBuilder::finish() && {
    if (r_.evaluations == 0 && r_.note.empty()) r_.note = "vacuous";
    return std::move(r_);
}

bool CheckReport::passed() const {
    for (const Record& r : records)
        if (r.kind == RecordKind::Check && !r.passed) return false;
    return true;
}

const Record* CheckReport::find(std::string_view name) const {
    for (const Record& r : records)
        if (r.name == name) return &r;
    return nullptr;
}

const Record& CheckReport::at(std::string_view name) const {
    if (const Record* r = find(name)) return *r;
    throw std::out_of_range("no record named '" + std::string(name) + "' in report '" + title + "'");
}

void CheckReport::append(const CheckReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
}

}  // namespace crv
