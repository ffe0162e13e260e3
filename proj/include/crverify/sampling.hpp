#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "crverify/fields.hpp"

namespace crv {

struct SamplingOptions {
    std::uint64_t seed = 42;
    std::size_t count = 64;
    double lo = -1.0;
    double hi = 1.0;
};

/// Deterministic list of chart points. The same options always yield the
/// same bits on every platform.
struct Samples {
    std::size_t dim = 0;
    std::vector<Vec> points;

    std::size_t size() const noexcept { return points.size(); }
    const Vec& operator[](std::size_t i) const { return points[i]; }
};

using Admissible = std::function<bool(const Vec&)>;

constexpr int kMaxResamples = 10;

/// Uniform points in [lo, hi]^dim. A point rejected by `admissible` is
/// redrawn up to kMaxResamples times before a GeometryError is raised.
Samples draw_samples(std::size_t dim, const SamplingOptions& opt, const Admissible& admissible = {});

/// Explicit point list; every point must be admissible.
Samples explicit_samples(std::size_t dim, std::vector<Vec> points, const Admissible& admissible = {});

bool positive_definite(const Mat& g);

/// Rejects points where the metric is not positive-definite.
Admissible metric_guard(const MetricField& g);

}  // namespace crv
