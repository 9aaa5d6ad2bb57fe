#include "jtk/families.hpp"
#include "jtk/jacobi.hpp"

#include <doctest.h>

#include <random>

using namespace jtk;

static Chart xyz() { return Chart({"x", "y", "z"}); }

TEST_CASE("reference structure satisfies both identities exactly") {
    JacobiStructure j = reference_structure();
    StructureReport rep = check_jacobi(j);
    REQUIRE(rep.items.size() == 2);
    CHECK(rep.items[0].verdict.kind == ZeroVerdict::ProvedZero);
    CHECK(rep.items[1].verdict.kind == ZeroVerdict::ProvedZero);
    CHECK(rep.pass());
}

TEST_CASE("non-Jacobi pair fails with a witness") {
    Chart c = xyz();
    SkewField pi = SkewField::multivector(c, 2);
    pi.add_term({0, 1}, Expr::var("x"));
    SkewField ev = SkewField::multivector(c, 1);
    ev.add_term({2}, Expr::integer(1));
    StructureReport rep = check_jacobi(JacobiStructure(c, pi, ev));
    CHECK(!rep.pass());
    bool found_witness = false;
    for (const auto& it : rep.items)
        if (it.verdict.kind == ZeroVerdict::NonZero) {
            found_witness = !it.verdict.witness.empty();
            CHECK(it.verdict.witness_value != 0.0);
        }
    CHECK(found_witness);
}

TEST_CASE("dimension-3 scalar relations agree with the general checker") {
    Chart c = xyz();
    std::mt19937_64 rng(7);
    auto randc = [&] {
        std::uniform_int_distribution<int> k(-2, 2), v(0, 2);
        return Expr::sum({Expr::integer(k(rng)) * Expr::var(c.name(v(rng))),
                          Expr::integer(k(rng)) *
                              Expr::pow(Expr::var(c.name(v(rng))), 2)});
    };
    for (int trial = 0; trial < 8; ++trial) {
        Expr fx = randc(), fy = randc(), fz = randc();
        Expr gx = randc(), gy = randc(), gz = randc();
        SkewField pi = SkewField::multivector(c, 2);
        pi.add_term({0, 1}, fz);
        pi.add_term({2, 0}, fy);
        pi.add_term({1, 2}, fx);
        SkewField ev = SkewField::multivector(c, 1);
        ev.add_term({0}, gx);
        ev.add_term({1}, gy);
        ev.add_term({2}, gz);
        bool general = check_jacobi(JacobiStructure(c, pi, ev)).pass();
        bool scalar = check_jacobi_dim3(fx, fy, fz, gx, gy, gz, c).pass();
        CHECK(general == scalar);
    }
}

TEST_CASE("contact defect of the reference structure") {
    JacobiStructure j = reference_structure();
    Expr expected = parse_expr("2*(x^4 + y^4)", j.chart);
    CHECK(is_zero(contact_defect(j) - expected, j.chart).kind ==
          ZeroVerdict::ProvedZero);

    StructureReport locus = singular_locus_report(j);
    CHECK(!locus.sign_change_found);  // defect >= 0, no transverse crossing
    CHECK(!locus.defect_identically_zero);
}

TEST_CASE("poissonify produces a homogeneous Poisson structure") {
    JacobiStructure j = reference_structure();
    HomogeneousPoisson hp = poissonify(j);
    CHECK(hp.chart.dim() == 4);
    CHECK(hp.chart.name(0) == "t");
    CHECK(hp.homogeneity_constant == Rational(-1));

    CHECK(check_poisson(hp.pi).pass());
    StructureReport hom = check_homogeneous(hp);
    CHECK(hom.pass());
    REQUIRE(hom.measured_constant.has_value());
    CHECK(*hom.measured_constant == Rational(-1));
}

TEST_CASE("slice at t = 0 inverts poissonify") {
    for (const JacobiStructure& j : {reference_structure(), sigma_structure()}) {
        HomogeneousPoisson hp = poissonify(j);
        JacobiStructure back = slice_induce(hp, "t", 0);
        FieldZero dpi = field_is_zero(sub(back.pi, j.pi));
        FieldZero de = field_is_zero(sub(back.e, j.e));
        CHECK(dpi.verdict.is_zero());
        CHECK(dpi.verdict.max_residual <= 1e-12);
        CHECK(de.verdict.is_zero());
        CHECK(de.verdict.max_residual <= 1e-12);
    }
}

TEST_CASE("contact defect needs an odd-dimensional chart") {
    Chart c({"x", "y"});
    SkewField pi = SkewField::multivector(c, 2);
    pi.add_term({0, 1}, Expr::integer(1));
    SkewField ev = SkewField::multivector(c, 1);
    CHECK_THROWS_AS(contact_defect(JacobiStructure(c, pi, ev)), EvenDimension);
}

TEST_CASE("slice_induce needs a unit coordinate homothety") {
    JacobiStructure j = reference_structure();
    HomogeneousPoisson hp = poissonify(j);
    hp.z = SkewField::multivector(hp.chart, 1);
    hp.z.add_term({0}, Expr::var("t"));  // t d/dt, not d/dt
    CHECK_THROWS_AS(slice_induce(hp, "t", 0), NonCoordinateHomothety);
}

TEST_CASE("contact form conversion reproduces the reference bivector") {
    ContactForm cf = sigma_contact_form();
    JacobiStructure conv = contact_form_to_jacobi(cf);
    JacobiStructure printed = sigma_structure();
    CHECK(field_is_zero(sub(conv.pi, printed.pi)).verdict.is_zero());
    CHECK(field_is_zero(sub(conv.e, printed.e)).verdict.is_zero());
    CHECK(check_jacobi(conv).pass());
}

TEST_CASE("simplest contact form converts to a Jacobi pair") {
    Chart c = xyz();
    SkewField alpha = SkewField::form(c, 1);
    alpha.add_term({2}, Expr::integer(1));  // dz + x dy
    alpha.add_term({1}, Expr::var("x"));
    JacobiStructure j = contact_form_to_jacobi(ContactForm{c, alpha});
    CHECK(check_jacobi(j).pass());
    // Contact everywhere: the defect is a nonzero constant.
    CHECK(is_zero(contact_defect(j), c).kind == ZeroVerdict::NonZero);
}

TEST_CASE("degenerate form is rejected") {
    Chart c = xyz();
    SkewField alpha = SkewField::form(c, 1);
    alpha.add_term({2}, Expr::integer(1));  // alpha^d(alpha) = 0
    CHECK_THROWS_AS(contact_form_to_jacobi(ContactForm{c, alpha}), NotContact);
}

TEST_CASE("conversion is dimension-3 only") {
    Chart c({"a", "b", "u", "v", "w"});
    SkewField alpha = SkewField::form(c, 1);
    alpha.add_term({4}, Expr::integer(1));
    alpha.add_term({1}, Expr::var("a"));
    alpha.add_term({3}, Expr::var("u"));
    CHECK_THROWS_AS(contact_form_to_jacobi(ContactForm{c, alpha}),
                    UnsupportedDimension);
}

TEST_CASE("homogeneity measurement with a linear Euler homothety") {
    Chart c({"x", "y"});
    SkewField pi = SkewField::multivector(c, 2);
    pi.add_term({0, 1}, Expr::integer(1));
    SkewField z = SkewField::multivector(c, 1);
    z.add_term({0}, Expr::var("x"));
    z.add_term({1}, Expr::var("y"));
    HomogeneousPoisson hp{c, pi, z, Rational(-2)};
    StructureReport rep = check_homogeneous(hp);
    CHECK(rep.pass());
}

TEST_CASE("euler degree check, unit weights") {
    Chart c = xyz();
    SkewField pi = SkewField::multivector(c, 2);
    pi.add_term({0, 1}, parse_expr("z^2", c));
    pi.add_term({1, 2}, parse_expr("x^2", c));
    SkewField ev = SkewField::multivector(c, 1);
    for (int i = 0; i < 3; ++i) ev.add_term({i}, Expr::var(c.name(i)));
    StructureReport rep =
        euler_degree_check(JacobiStructure(c, pi, ev), {1, 1, 1});
    CHECK(rep.pass());
    CHECK(*rep.measured_constant == Rational(3));
}

TEST_CASE("euler degree check, weighted") {
    Chart c = xyz();
    SkewField pi = SkewField::multivector(c, 2);
    pi.add_term({0, 1}, parse_expr("x*y", c));
    pi.add_term({1, 2}, parse_expr("y^2", c));
    SkewField ev = SkewField::multivector(c, 1);
    ev.add_term({0}, parse_expr("2*x", c));
    ev.add_term({1}, Expr::var("y"));
    ev.add_term({2}, Expr::var("z"));
    StructureReport rep =
        euler_degree_check(JacobiStructure(c, pi, ev), {2, 1, 1});
    CHECK(rep.pass());
    CHECK(*rep.measured_constant == Rational(4));

    // Wrong weights mean E is not the declared Euler field.
    CHECK_THROWS_AS(
        euler_degree_check(JacobiStructure(c, pi, ev), {1, 1, 1}),
        NotEulerField);
}

TEST_CASE("sign-change witness finder") {
    Chart c = xyz();
    auto w = find_sign_change_witness(parse_expr("x - 1", c), c);
    REQUIRE(w.has_value());
    CHECK(std::abs(w->point.at("x") - 1.0) < 1e-8);
    CHECK(w->value <= 1e-10);
    CHECK(w->gradient_norm > 1e-6);

    // A nonnegative function has no sign change to find.
    CHECK(!find_sign_change_witness(parse_expr("x^2 + y^2 + 1", c), c));
}
