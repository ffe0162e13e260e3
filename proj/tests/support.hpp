#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "crverify/expr.hpp"
#include "crverify/fields.hpp"

namespace crv::testing {

/// Random expression trees whose every subterm is finite on the box
/// [-1, 1]^dim: divisors, sqrt and exp arguments are shaped so they cannot
/// hit a pole or overflow. Sums are averaged and constants stay in [-1, 1]
/// so nested powers keep moderate higher derivatives, which a central
/// difference with h = 1e-5 needs to be a usable oracle.
class ExprGen {
public:
    ExprGen(std::uint64_t seed, std::size_t dim) : rng_(seed), dim_(dim) {}

    Expr tree(int depth) {
        if (depth <= 0 || unit() < 0.2) return leaf();
        switch (pick(9)) {
        case 0:
            return (tree(depth - 1) + tree(depth - 1)) * 0.5;
        case 1:
            return (tree(depth - 1) - tree(depth - 1)) * 0.5;
        case 2:
            return tree(depth - 1) * tree(depth - 1);
        case 3:
            return tree(depth - 1) / (Expr::constant(1.5) + sin(tree(depth - 1)));
        case 4:
            return pow(tree(depth - 1), 2 + static_cast<int>(pick(2)));
        case 5:
            return sin(tree(depth - 1));
        case 6:
            return cos(tree(depth - 1));
        case 7:
            return exp(sin(tree(depth - 1)));
        default:
            return sqrt(Expr::constant(1.0) + pow(tree(depth - 1), 2));
        }
    }

    Expr leaf() {
        if (unit() < 0.6) return Expr::variable(pick(dim_), dim_);
        // Short decimals so printing is exercised on non-integers too.
        return Expr::constant(std::round((unit() * 2.0 - 1.0) * 100.0) / 100.0);
    }

    Vec point(double half_width) {
        Vec p(static_cast<Eigen::Index>(dim_));
        for (auto& v : p) v = (2.0 * unit() - 1.0) * half_width;
        return p;
    }

    double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

private:
    std::mt19937_64 rng_;
    std::size_t dim_;
};

inline double central_difference(const Expr& e, Vec p, std::size_t k, double h) {
    p[static_cast<Eigen::Index>(k)] += h;
    const double fp = e.eval(as_span(p));
    p[static_cast<Eigen::Index>(k)] -= 2 * h;
    const double fm = e.eval(as_span(p));
    return (fp - fm) / (2 * h);
}

}  // namespace crv::testing
