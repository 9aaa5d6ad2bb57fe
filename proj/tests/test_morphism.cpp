#include "jtk/families.hpp"
#include "jtk/morphism.hpp"

#include <doctest.h>

using namespace jtk;

TEST_CASE("pullback substitutes components") {
    SmoothMap map = polar_map();
    Expr e = parse_expr("z", map.target);
    Expr pulled = pullback(e, map);
    CHECK(structurally_equal(pulled, Expr::var("p3")));

    // x^2 + y^2 pulls back to p1^2.
    Expr r2 = pullback(parse_expr("x^2 + y^2", map.target), map);
    CHECK(is_zero(r2 - parse_expr("p1^2", map.source), map.source).is_zero());
}

TEST_CASE("map validation") {
    Chart s({"u"});
    Chart t({"a", "b"});
    CHECK_THROWS(SmoothMap(s, t, {parse_expr("u", s)}));  // wrong count
    // Components must live on the source chart.
    CHECK_THROWS(SmoothMap(s, t, {parse_expr("a", t), parse_expr("b", t)}));
}

TEST_CASE("reference map is a Jacobi morphism") {
    SmoothMap map = polar_map();
    MorphismReport rep =
        check_jacobi_morphism(map, sigma_structure(), reference_structure());
    CHECK(rep.items.size() == 6);  // 3 bivector + 3 vector relations
    CHECK(rep.pass());
}

TEST_CASE("perturbing a component breaks the morphism relations") {
    SmoothMap good = polar_map();
    std::vector<Expr> comps = good.components;
    comps[2] = comps[2] + parse_expr("p1", good.source);
    SmoothMap bad(good.source, good.target, comps);
    MorphismReport rep =
        check_jacobi_morphism(bad, sigma_structure(), reference_structure());
    CHECK(!rep.pass());
    // Swapping the first two components flips a sign and also fails.
    SmoothMap swapped(good.source, good.target,
                      {good.components[1], good.components[0],
                       good.components[2]});
    CHECK(!check_jacobi_morphism(swapped, sigma_structure(), reference_structure())
               .pass());
}

TEST_CASE("resolution claim: relations pass, flags contradict the locus") {
    ResolutionClaim claim{polar_map(), sigma_structure(), reference_structure(),
                          true, true, false};
    MorphismReport rep = check_contact_resolution(claim);
    CHECK(rep.pass());  // all identity/relation items hold
    CHECK(rep.asserted_flags.at("proper"));
    // The target locus {x = y = 0} has codimension 2: no codim-1 witness,
    // hence no contradiction notice.
    CHECK(!rep.sign_change_found);
    CHECK(rep.citations.empty());
}

TEST_CASE("resolution claim with a codimension-1 target locus") {
    // Any degree-4 homogeneous F gives a Jacobi pair of the reference shape;
    // F = x^3*y makes the defect 2*x^3*y change sign across {x = 0}.
    Chart c({"x", "y", "z"});
    SkewField pi = SkewField::multivector(c, 2);
    pi.add_term({0, 1}, parse_expr("x^3*y", c));
    pi.add_term({2, 0}, parse_expr("x", c));
    pi.add_term({1, 2}, parse_expr("-y", c));
    SkewField ev = SkewField::multivector(c, 1);
    ev.add_term({2}, Expr::integer(2));
    JacobiStructure j(c, pi, ev);
    REQUIRE(check_jacobi(j).pass());

    ResolutionClaim claim{
        SmoothMap(c, c, {Expr::var("x"), Expr::var("y"), Expr::var("z")}),
        j, j, true, true, true};
    MorphismReport rep = check_contact_resolution(claim);
    // The identity-map relations hold, but the proper/semi-connected flags
    // contradict the codimension-1 singular locus of the target.
    CHECK(rep.sign_change_found);
    REQUIRE(rep.citations.size() == 2);
    CHECK(!rep.witnesses.empty());
}

TEST_CASE("lifted resolution intertwines the Poissonifications") {
    SmoothMap lifted = lift_resolution(polar_map());
    CHECK(lifted.source.dim() == 4);
    CHECK(lifted.source.name(0) == "t");
    HomogeneousPoisson src = poissonify(sigma_structure());
    HomogeneousPoisson tgt = poissonify(reference_structure());
    MorphismReport rep =
        check_homogeneous_symplectic_resolution(lifted, src, tgt);
    CHECK(rep.pass());
}

TEST_CASE("symplectic resolution check needs even dimension") {
    HomogeneousPoisson src = poissonify(sigma_structure());
    // A 3-dim "homogeneous Poisson" triple should be rejected.
    JacobiStructure j = reference_structure();
    HomogeneousPoisson odd{j.chart, j.pi, j.e, Rational(0)};
    SmoothMap id(j.chart, j.chart,
                 {Expr::var("x"), Expr::var("y"), Expr::var("z")});
    CHECK_THROWS_AS(check_homogeneous_symplectic_resolution(id, odd, odd),
                    OddDimension);
}

TEST_CASE("dimension mismatch is rejected") {
    Chart s({"u", "v"});
    Chart t({"x", "y", "z"});
    SmoothMap map(s, t, {Expr::var("u"), Expr::var("v"), Expr::var("u")});
    SkewField x = SkewField::multivector(s, 1);
    x.add_term({0}, Expr::integer(1));
    SkewField y = SkewField::multivector(t, 1);
    y.add_term({0}, Expr::integer(1));
    // Vector pushforward across different dims is fine; the resolution
    // checker is what requires equal dimensions.
    CHECK(pushforward_check_vector(x, map, y).items.size() == 3);
    JacobiStructure tgt = reference_structure();
    SkewField spi = SkewField::multivector(s, 2);
    SkewField se = SkewField::multivector(s, 1);
    ResolutionClaim claim{map, JacobiStructure(s, spi, se), tgt, false, false,
                          false};
    CHECK_THROWS_AS(check_contact_resolution(claim), DimensionMismatch);
}

TEST_CASE("chart mismatch is rejected") {
    SmoothMap map = polar_map();
    JacobiStructure wrong = reference_structure();  // lives on the target chart
    CHECK_THROWS_AS(check_jacobi_morphism(map, wrong, wrong), ChartMismatch);
}
