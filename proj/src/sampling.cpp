#include "crverify/sampling.hpp"

#include <random>

namespace crv {

namespace {

// Top 53 bits of a 64-bit draw, so the mapping does not depend on the
// standard library's distribution implementation.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool finite_point(const Vec& p) { return p.allFinite(); }

}  // namespace

Samples draw_samples(std::size_t dim, const SamplingOptions& opt, const Admissible& admissible) {
    if (dim == 0) throw std::invalid_argument("cannot sample a zero-dimensional chart");
    if (!(opt.hi > opt.lo)) throw std::invalid_argument("sampling box must have hi > lo");
    std::mt19937_64 rng(opt.seed);
    Samples s;
    s.dim = dim;
    s.points.reserve(opt.count);
    for (std::size_t i = 0; i < opt.count; ++i) {
        Vec p(dim);
        bool ok = false;
        for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
            for (std::size_t k = 0; k < dim; ++k) p[k] = opt.lo + (opt.hi - opt.lo) * unit_draw(rng);
            if (!admissible || admissible(p)) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw GeometryError("sample " + std::to_string(i) + " rejected after " + std::to_string(kMaxResamples) +
                                    " resamples (metric not positive-definite or chart degenerate)",
                                p);
        }
        s.points.push_back(p);
    }
    return s;
}

Samples explicit_samples(std::size_t dim, std::vector<Vec> points, const Admissible& admissible) {
    Samples s;
    s.dim = dim;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec& p = points[i];
        if (static_cast<std::size_t>(p.size()) != dim) {
            throw std::invalid_argument("sample point " + std::to_string(i) + " has " + std::to_string(p.size()) +
                                        " coordinates, expected " + std::to_string(dim));
        }
        if (!finite_point(p)) throw std::invalid_argument("sample point " + std::to_string(i) + " is not finite");
        if (admissible && !admissible(p)) {
            throw GeometryError("sample point " + std::to_string(i) + " is not admissible", p);
        }
    }
    s.points = std::move(points);
    return s;
}

bool positive_definite(const Mat& g) {
    if (!g.allFinite()) return false;
    Eigen::LLT<Mat> llt(g);
    return llt.info() == Eigen::Success;
}

Admissible metric_guard(const MetricField& g) {
    return [g](const Vec& p) {
        try {
            return positive_definite(g.at(as_span(p)));
        } catch (const DomainError&) {
            return false;
        }
    };
}

}  // namespace crv
