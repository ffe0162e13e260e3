#include <doctest.h>

#include "crverify/geometry.hpp"

using namespace crv;

namespace {

Expr p2(const char* s) { return parse(s, 2); }

// g = diag(1, x1^2): the flat plane in polar coordinates.
MetricField polar() { return MetricField(2, {p2("1"), p2("0"), p2("x1^2")}); }

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("polar Christoffel symbols") {
    const std::vector<double> p = {2.0, 0.3};
    const Christoffel G = levi_civita_at(polar(), p);
    CHECK(G(1, 0, 1) == doctest::Approx(0.5));
    CHECK(G(1, 1, 0) == doctest::Approx(0.5));
    CHECK(G(0, 1, 1) == doctest::Approx(-2.0));
    CHECK(G(0, 0, 0) == doctest::Approx(0.0));
    CHECK(G(1, 1, 1) == doctest::Approx(0.0));
}

TEST_CASE("symbolic Levi-Civita for a diagonal metric") {
    const ConnField lc = levi_civita(polar());
    REQUIRE(lc.symbolic().has_value());
    const std::vector<double> p = {-1.5, 0.0};
    const Christoffel a = lc.at(p), b = levi_civita_at(polar(), p);
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(a(k, i, j) == doctest::Approx(b(k, i, j)));
}

TEST_CASE("singular metric is a geometry error") {
    const std::vector<double> origin = {0.0, 0.0};
    CHECK_THROWS_AS(levi_civita_at(polar(), origin), GeometryError);
}

TEST_CASE("Lie bracket") {
    const VectorField X({p2("x2"), p2("0")}, 2), Y({p2("0"), p2("1")}, 2);
    const VectorField B = lie_bracket(X, Y);
    const std::vector<double> p = {0.2, 0.9};
    CHECK(B[0].eval(p) == doctest::Approx(-1.0));
    CHECK(B[1].eval(p) == doctest::Approx(0.0));
}

TEST_CASE("covariant derivative of the radial field") {
    // nabla_{d_theta} d_r = (1/r) d_theta
    const ConnField lc = levi_civita(polar());
    const VectorField dr({p2("1"), p2("0")}, 2), dth({p2("0"), p2("1")}, 2);
    const std::vector<double> p = {4.0, 1.0};
    const Vec v = covariant_derivative_at(lc, dth, dr, p);
    CHECK(v[0] == doctest::Approx(0.0));
    CHECK(v[1] == doctest::Approx(0.25));
    const VectorField sym = covariant_derivative(lc, dth, dr);
    CHECK(sym[1].eval(p) == doctest::Approx(0.25));
}

TEST_CASE("dual connection") {
    const MetricField g = MetricField::euclidean(2);
    std::vector<Expr> off(8, Expr::constant(0));
    off[0] = p2("x2");  // Gamma^1_11
    const ConnField nabla(g, 1.0, off);
    const ConnField star = dual_connection(nabla, g);
    const std::vector<double> p = {0.1, 0.5};
    CHECK(star.at(p)(0, 0, 0) == doctest::Approx(-0.5));
    CHECK(dual_connection(star, g).at(p)(0, 0, 0) == doctest::Approx(0.5));
}

TEST_CASE("statistical structure passes for a symmetric self-adjoint K") {
    // K(X,Y) = X^1 Y^1 e1 in the Euclidean plane.
    const MetricField g = MetricField::euclidean(2);
    std::vector<Expr> off(8, Expr::constant(0));
    off[0] = Expr::constant(1.0);
    const StatTriple st(g, ConnField(g, 1.0, off));
    const CheckReport r = check_statistical(st, draw_samples(2, {}));
    CHECK(r.passed());
    CHECK(r.samples == 64);
}

TEST_CASE("non-self-adjoint K fails Codazzi and duality") {
    // K(X,Y) = X^1 Y^1 e2: (nabla_1 g)(2,1) = -1 while (nabla_2 g)(1,1) = 0.
    const MetricField g = MetricField::euclidean(2);
    std::vector<Expr> off(8, Expr::constant(0));
    off[(1 * 2 + 0) * 2 + 0] = Expr::constant(1.0);
    const StatTriple st(g, ConnField(g, 1.0, off));
    const CheckReport r = check_statistical(st, draw_samples(2, {}));
    CHECK_FALSE(r.at("Codazzi symmetry of nabla").passed);
    CHECK(r.at("Codazzi symmetry of nabla").max_residual == doctest::Approx(1.0));
    CHECK_FALSE(r.at("K self-adjointness").passed);
    // 2 LC - nabla is the dual only for self-adjoint K.
    CHECK_FALSE(r.at("duality").passed);
    CHECK(r.at("torsion of nabla").passed);
    CHECK_FALSE(r.passed());
}

TEST_CASE("torsion is detected") {
    const MetricField g = MetricField::euclidean(2);
    std::vector<Expr> off(8, Expr::constant(0));
    off[(0 * 2 + 0) * 2 + 1] = Expr::constant(1.0);  // Gamma^1_12 only
    const StatTriple st(g, ConnField(g, 1.0, off));
    const CheckReport r = check_statistical(st, draw_samples(2, {}));
    const Record& t = r.at("torsion of nabla");
    CHECK_FALSE(t.passed);
    CHECK(t.max_residual == doctest::Approx(1.0));
}

TEST_CASE("sampling is deterministic and respects the guard") {
    SamplingOptions o;
    o.count = 10;
    const Samples a = draw_samples(3, o), b = draw_samples(3, o);
    REQUIRE(a.size() == 10);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i].array() == b[i].array()).all());
    const Samples c = draw_samples(3, o, [](const Vec& v) { return v[0] > 0; });
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i][0] > 0);
    CHECK_THROWS_AS(draw_samples(3, o, [](const Vec&) { return false; }), GeometryError);
}

}  // TEST_SUITE
