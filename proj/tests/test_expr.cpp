#include "jtk/poly.hpp"
#include "jtk/zero.hpp"

#include <doctest.h>

#include <cmath>

using namespace jtk;

static Chart xyz() { return Chart({"x", "y", "z"}); }

TEST_CASE("parse, eval, print round-trip") {
    Chart c = xyz();
    Expr e = parse_expr("3*x^2*y - sin(z)/2 + exp(x*y) - 1/4", c);
    Point p{{"x", 0.5}, {"y", -1.25}, {"z", 2.0}};
    double expected = 3 * 0.25 * -1.25 - std::sin(2.0) / 2 +
                      std::exp(0.5 * -1.25) - 0.25;
    CHECK(e.eval(p) == doctest::Approx(expected).epsilon(1e-14));

    // Printing parses back to the same tree.
    Expr again = parse_expr(e.str(), c);
    CHECK(structurally_equal(e, again));
}

TEST_CASE("parser rejections") {
    Chart c = xyz();
    CHECK_THROWS_AS(parse_expr("x + w", c), UnknownIdentifier);
    CHECK_THROWS_AS(parse_expr("x + ", c), SyntaxError);
    CHECK_THROWS_AS(parse_expr("sin(x", c), SyntaxError);
    CHECK_THROWS_AS(parse_expr("x^y", c), SyntaxError);
    try {
        parse_expr("x * * y", c);
        CHECK(false);
    } catch (const SyntaxError& e) {
        CHECK(e.position > 0);
    }
}

TEST_CASE("decimal literals are exact rationals") {
    Chart c({"x"});
    Expr e = parse_expr("0.125*x", c);
    auto p = normalize_polynomial(e);
    REQUIRE(p.has_value());
    CHECK(p->terms().begin()->second == Rational(1, 8));
}

TEST_CASE("differentiation") {
    Chart c = xyz();
    Expr e = parse_expr("x^3*y + cos(x*z)", c);
    Expr dx = e.diff("x");
    Expr expect = parse_expr("3*x^2*y - z*sin(x*z)", c);
    Expr residual = dx - expect;
    CHECK(is_zero(residual, c).is_zero());

    // Quotient rule, checked numerically away from the pole.
    Expr q = parse_expr("x / (1 + y^2)", c).diff("y");
    Point pt{{"x", 2.0}, {"y", 0.5}, {"z", 0.0}};
    CHECK(q.eval(pt) == doctest::Approx(-2.0 * 2 * 0.5 / (1.25 * 1.25)));
}

TEST_CASE("polynomial normalization") {
    Chart c = xyz();
    // (x+y)^2 - x^2 - 2xy - y^2 is exactly zero.
    Expr e = parse_expr("(x + y)^2 - x^2 - 2*x*y - y^2", c);
    auto p = normalize_polynomial(e);
    REQUIRE(p.has_value());
    CHECK(p->is_zero());
    CHECK(is_zero(e, c).kind == ZeroVerdict::ProvedZero);

    // Transcendental pieces fall back to sampling.
    CHECK(!normalize_polynomial(parse_expr("sin(x)", c)).has_value());
    CHECK(!normalize_polynomial(parse_expr("x / y", c)).has_value());
    CHECK(!normalize_polynomial(parse_expr("x^-1", c)).has_value());
    // Constant denominators stay polynomial.
    CHECK(normalize_polynomial(parse_expr("x / 3", c)).has_value());
}

TEST_CASE("is_zero verdicts") {
    Chart c = xyz();
    SampleConfig cfg;

    ZeroVerdict pyth = is_zero(parse_expr("sin(x)^2 + cos(x)^2 - 1", c), c, cfg);
    CHECK(pyth.kind == ZeroVerdict::NumericallyZero);
    CHECK(pyth.samples == cfg.samples);

    ZeroVerdict bad = is_zero(parse_expr("x*y - 1", c), c, cfg);
    CHECK(bad.kind == ZeroVerdict::NonZero);
    CHECK(std::abs(bad.witness.at("x") * bad.witness.at("y") - 1.0 -
                   bad.witness_value) < 1e-12);

    ZeroVerdict exact = is_zero(parse_expr("0*x", c), c, cfg);
    CHECK(exact.kind == ZeroVerdict::ProvedZero);
}

TEST_CASE("sampled range sanity: cos^4 + sin^4 stays in [1/2, 1]") {
    Chart c({"x"});
    Expr e = parse_expr("cos(x)^4 + sin(x)^4", c);
    SampleConfig cfg;
    for (int i = 0; i < cfg.samples; ++i) {
        double v = e.eval(sample_point(c, cfg, i));
        CHECK(v >= 0.5 - 1e-12);
        CHECK(v <= 1.0 + 1e-12);
    }
}

TEST_CASE("sampling is deterministic and seed-sensitive") {
    Chart c = xyz();
    SampleConfig a, b;
    b.seed = 7;
    CHECK(sample_point(c, a, 5) == sample_point(c, a, 5));
    CHECK(sample_point(c, a, 5) != sample_point(c, b, 5));
    CHECK(sample_point(c, a, 5) != sample_point(c, a, 6));
    for (int i = 0; i < 16; ++i)
        for (const auto& [k, v] : sample_point(c, a, i)) CHECK(std::abs(v) <= a.box);
}

TEST_CASE("serial and parallel sampling agree bit for bit") {
    Chart c = xyz();
    SampleConfig cfg;
    cfg.samples = 512;
    for (const char* text : {"sin(x)^2 + cos(x)^2 - 1", "exp(x)*exp(y) - exp(x + y)",
                             "x*y*z - 1", "1 / (x^2 + 1) - cos(y)^2"}) {
        Expr e = parse_expr(text, c);
        ZeroVerdict s = is_zero_sampled_serial(e, c, cfg);
        ZeroVerdict p = is_zero_sampled(e, c, cfg);
        CHECK(s.kind == p.kind);
        CHECK(s.samples == p.samples);
        CHECK(s.max_residual == p.max_residual);
        CHECK(s.witness == p.witness);
        CHECK(s.witness_value == p.witness_value);
    }
}

TEST_CASE("near-pole samples are redrawn") {
    Chart c({"x"});
    // 1/x has a pole only on a measure-zero set; every sample must land on a
    // usable denominator and the verdict must be NonZero with finite residual.
    ZeroVerdict v = is_zero(parse_expr("1/x - 2", c), c);
    CHECK(v.kind == ZeroVerdict::NonZero);
    CHECK(std::isfinite(v.max_residual));
}

TEST_CASE("substitution") {
    Chart c = xyz();
    Chart uv({"u", "v"});
    Expr e = parse_expr("x^2 + sin(y)", c);
    Expr sub = e.substitute({{"x", parse_expr("u + v", uv)},
                             {"y", parse_expr("u*v", uv)}});
    Point p{{"u", 0.3}, {"v", 1.1}};
    CHECK(sub.eval(p) ==
          doctest::Approx(1.4 * 1.4 + std::sin(0.33)).epsilon(1e-13));
    auto vars = sub.variables();
    CHECK(vars == std::vector<std::string>{"u", "v"});
}
