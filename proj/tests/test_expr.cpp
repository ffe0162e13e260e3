#include <doctest.h>

#include <cmath>

#include "crverify/expr.hpp"
#include "crverify/fields.hpp"
#include "support.hpp"

using namespace crv;

namespace {
double at(const Expr& e, std::vector<double> p) { return e.eval(p); }
}  // namespace

TEST_SUITE("expr") {

TEST_CASE("evaluates polynomial") {
    const Expr e = parse("x1*x2 + 3", 2);
    CHECK(at(e, {2, 5}) == doctest::Approx(13.0));
}

TEST_CASE("trig identity holds numerically") {
    const Expr e = parse("sin(x1)^2 + cos(x1)^2", 1);
    for (double x : {-2.0, -0.3, 0.0, 0.7, 3.1}) CHECK(at(e, {x}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("embedding component") {
    CHECK(at(parse("x3 - x4", 5), {0, 0, 1, 2, 0}) == doctest::Approx(-1.0));
    CHECK(at(parse("x4 - x3", 5), {0, 0, 1, 2, 0}) == doctest::Approx(1.0));
}

TEST_CASE("derivative of a square") {
    const Expr d = parse("x1^2", 1).diff(0);
    CHECK(at(d, {3}) == doctest::Approx(6.0));
}

TEST_CASE("derivative of a quotient and chain rule") {
    const Expr e = parse("sin(x1*x2)/(2 + x2)", 2);
    const std::vector<double> p = {0.4, -0.7};
    const double x = p[0], y = p[1];
    CHECK(at(e.diff(0), p) == doctest::Approx(y * std::cos(x * y) / (2 + y)));
    CHECK(at(e.diff(1), p) ==
          doctest::Approx(x * std::cos(x * y) / (2 + y) - std::sin(x * y) / ((2 + y) * (2 + y))));
}

TEST_CASE("negative exponent and sqrt") {
    const Expr e = parse("x1^-2 + sqrt(x1)", 1);
    CHECK(at(e, {4}) == doctest::Approx(1.0 / 16 + 2));
    CHECK(at(e.diff(0), {4}) == doctest::Approx(-2.0 / 64 + 0.25));
}

TEST_CASE("constant folding") {
    const Expr x = parse("x1", 1);
    CHECK((x * Expr::constant(0)).is_zero());
    CHECK((x * Expr::constant(1)) == x);
    CHECK((x + Expr::constant(0)) == x);
    CHECK(parse("2*3 + 1", 0).value() == 7.0);
    CHECK(parse("x1 - x1", 1).is_zero() == false);  // no algebraic cancellation promised
    CHECK(parse("3", 4).is_variable_free());
}

TEST_CASE("substitution composes maps") {
    const Expr f = parse("x1*x2", 2);
    const std::vector<Expr> repl = {parse("x1 + x3", 3), parse("2*x2", 3)};
    const Expr g = f.substitute(repl);
    CHECK(g.dim() == 3);
    CHECK(at(g, {1, 2, 3}) == doctest::Approx(16.0));
}

TEST_CASE("print then parse reproduces the tree") {
    testing::ExprGen gen(7, 3);
    for (int i = 0; i < 200; ++i) {
        const Expr e = gen.tree(5);
        const Expr back = parse(e.str(), 3);
        CHECK(back == e);
    }
    CHECK(parse("-x1^2", 1).str() == parse(parse("-x1^2", 1).str(), 1).str());
    CHECK(at(parse("-x1^2", 1), {3}) == doctest::Approx(9.0));  // '-' binds inside the base
    CHECK(at(parse("2^-1", 0), {}) == doctest::Approx(0.5));
}

TEST_CASE("parse errors carry an offset") {
    auto offset_of = [](const char* src, std::size_t dim) -> std::size_t {
        try {
            parse(src, dim);
        } catch (const ParseError& e) {
            return e.offset();
        }
        return 999;
    };
    CHECK(offset_of("x1 + x8", 7) == 5);
    CHECK(offset_of("x1 + ", 1) == 5);
    CHECK(offset_of("tan(x1)", 1) == 0);
    CHECK(offset_of("(x1", 1) == 3);
    CHECK(offset_of("x0", 2) == 0);
    CHECK_THROWS_AS(parse("x1 $ 2", 1), ParseError);
}

TEST_CASE("variable out of range has its own kind") {
    try {
        parse("x8", 7);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::VariableOutOfRange);
    }
}

TEST_CASE("domain errors name the subexpression") {
    const Expr e = parse("1/(x1 - 1)", 1);
    CHECK_THROWS_AS(at(e, {1.0}), DomainError);
    try {
        at(parse("sqrt(x1)", 1), {-1});
    } catch (const DomainError& err) {
        CHECK(err.subexpression().find("sqrt") != std::string::npos);
    }
}

TEST_CASE("point dimension is checked") { CHECK_THROWS_AS(at(parse("x1 + x2", 2), {1.0}), std::invalid_argument); }

TEST_CASE("mixed chart dimensions are rejected") {
    CHECK_THROWS_AS(parse("x1", 2) + parse("x1", 3), std::invalid_argument);
    CHECK_NOTHROW(parse("x1", 2) + parse("4", 0));
}

TEST_CASE("expression matrices carry partials") {
    const ExprMatrix m(1, 2, 2, {parse("x1*x2", 2), parse("x2^2", 2)});
    const std::vector<double> p = {2, 3};
    const Mat d1 = m.partial(p, 1);
    CHECK(d1(0, 0) == doctest::Approx(2.0));
    CHECK(d1(0, 1) == doctest::Approx(6.0));
}

}  // TEST_SUITE
