#include "jtk/families.hpp"

#include <doctest.h>

using namespace jtk;

static UniPoly upoly(std::initializer_list<std::pair<int, long>> terms) {
    UniPoly p;
    for (auto [k, c] : terms)
        if (c != 0) p[k] = Rational(c);
    return p;
}

TEST_CASE("unipoly expr round-trip") {
    Chart c({"y"});
    UniPoly p = upoly({{0, 2}, {1, 3}, {4, -1}});
    Expr e = unipoly_to_expr(p, "y");
    auto back = unipoly_from_expr(e, "y");
    REQUIRE(back.has_value());
    CHECK(*back == p);
    CHECK(!unipoly_from_expr(parse_expr("sin(y)", c), "y").has_value());
}

TEST_CASE("closed-form solutions match worked examples") {
    // f = 3y + 2, n = 1: g = 2, h = -3y - wait; solve and verify instead of
    // pinning by hand: the verifier is exact.
    for (auto [f, n] : std::vector<std::pair<UniPoly, int>>{
             {upoly({{1, 3}, {0, 2}}), 1},
             {upoly({{2, 1}, {1, -1}}), 2},
             {upoly({{3, 5}}), 3}}) {
        FamilySpec spec{f, n, 1};
        FamilySolution sol = solve_family(spec);
        StructureReport rep = verify_family_system(spec, sol);
        REQUIRE(rep.items.size() == 2);
        CHECK(rep.items[0].verdict.kind == ZeroVerdict::ProvedZero);
        CHECK(rep.items[1].verdict.kind == ZeroVerdict::ProvedZero);
    }
}

TEST_CASE("pinned solution for f = 3y + 2, n = 1") {
    FamilySolution sol = solve_family({upoly({{1, 3}, {0, 2}}), 1, 1});
    // c*t^k with n = 1 contributes c(k-1)t^k to g and -ck t^(k-1) to h.
    CHECK(sol.g == upoly({{0, -2}}));
    CHECK(sol.h == upoly({{0, -3}}));
}

TEST_CASE("no polynomial solution when n >= 2 and f(0) != 0") {
    CHECK_THROWS_AS(solve_family({upoly({{0, 1}, {2, 1}}), 2, 1}),
                    NoPolynomialSolution);
    // The same f is fine for n = 1.
    CHECK_NOTHROW(solve_family({upoly({{0, 1}, {2, 1}}), 1, 1}));
    // Zero constant term is fine for n >= 2.
    CHECK_NOTHROW(solve_family({upoly({{1, 1}, {2, 1}}), 3, 1}));
}

TEST_CASE("solution map is linear in f") {
    UniPoly f1 = upoly({{1, 2}, {3, 1}});
    UniPoly f2 = upoly({{2, -1}, {1, 5}});
    UniPoly fsum;
    for (auto& [k, c] : f1) fsum[k] += c;
    for (auto& [k, c] : f2) {
        fsum[k] += c;
        if (fsum[k] == 0) fsum.erase(k);
    }
    for (int n : {1, 2}) {
        FamilySolution a = solve_family({f1, n, 1});
        FamilySolution b = solve_family({f2, n, 1});
        FamilySolution s = solve_family({fsum, n, 1});
        UniPoly gsum = a.g, hsum = a.h;
        for (auto& [k, c] : b.g) {
            gsum[k] += c;
            if (gsum[k] == 0) gsum.erase(k);
        }
        for (auto& [k, c] : b.h) {
            hsum[k] += c;
            if (hsum[k] == 0) hsum.erase(k);
        }
        CHECK(s.g == gsum);
        CHECK(s.h == hsum);
    }
}

TEST_CASE("built structures are Jacobi for m = 1, any n") {
    UniPoly f = upoly({{1, 1}, {2, 2}});
    for (int n : {1, 2, 3}) {
        FamilyStructure fs = build_family({f, n, 1});
        CHECK(fs.j.chart.dim() == 3);
        StructureReport rep = check_jacobi(fs.j);
        for (const auto& it : rep.items)
            CHECK(it.verdict.kind == ZeroVerdict::ProvedZero);
    }
}

TEST_CASE("m >= 2 carries an uncancelled cross-term residual") {
    // With several transverse coordinates, E's coefficients are full sums
    // over g(y_i), h(y_i), so the first bracket identity picks up cross
    // terms between different coordinates that the per-coordinate solution
    // cannot cancel (see README). Pin the residual for f = y, n = 1, m = 2:
    // it is exactly -4*y_i^2 on each (x, z, y_i) component.
    FamilyStructure fs = build_family({upoly({{1, 1}}), 1, 2});
    CHECK(fs.j.chart.dim() == 5);
    SkewField lhs = sub(schouten(fs.j.pi, fs.j.pi),
                        scale(Expr::integer(2), wedge(fs.j.e, fs.j.pi)));
    SkewField expect = SkewField::multivector(fs.j.chart, 3);
    for (int i = 2; i < 5; ++i)
        expect.add_term({0, 1, i},
                        parse_expr("-4*" + fs.j.chart.name(i) + "^2", fs.j.chart));
    CHECK(field_is_zero(sub(lhs, expect)).verdict.kind ==
          ZeroVerdict::ProvedZero);
    // The second identity still holds exactly.
    CHECK(field_is_zero(schouten(fs.j.e, fs.j.pi)).verdict.kind ==
          ZeroVerdict::ProvedZero);
    // The degenerate f = 0 case passes for any m.
    CHECK(check_jacobi(build_family({UniPoly{}, 1, 2}).j).pass());
}

TEST_CASE("chart naming: single transverse coordinate is y") {
    FamilyStructure one = build_family({upoly({{1, 1}}), 1, 1});
    CHECK(one.j.chart.names() == std::vector<std::string>{"x", "z", "y"});
    FamilyStructure two = build_family({upoly({{1, 1}}), 1, 2});
    CHECK(two.j.chart.dim() == 5);
    CHECK(two.j.chart.name(2) == "y1");
    CHECK(two.j.chart.name(4) == "y3");
}

TEST_CASE("family obstruction report finds the degeneracy witness") {
    // f = y^2 - 1 has simple roots at +-1; the defect touches zero there.
    FamilyStructure fs = build_family({upoly({{2, 1}, {0, -1}}), 1, 1});
    StructureReport rep = obstruction_report(fs);
    CHECK(rep.pass());
    CHECK(rep.sign_change_found);
    REQUIRE(!rep.witnesses.empty());
    const LocusWitness& w = rep.witnesses.front();
    CHECK(std::abs(std::abs(w.point.at("y")) - 1.0) < 1e-8);
    CHECK(w.value <= 1e-10);
    CHECK(w.gradient_norm > 1e-6);
    CHECK(!rep.citations.empty());
}

TEST_CASE("rootless f yields no witness") {
    // f = y^2 + 1 never vanishes in the box.
    FamilyStructure fs = build_family({upoly({{2, 1}, {0, 1}}), 1, 1});
    StructureReport rep = obstruction_report(fs);
    CHECK(rep.pass());
    CHECK(!rep.sign_change_found);
}

TEST_CASE("example registry runs green") {
    const auto& entries = paper_examples();
    CHECK(entries.size() >= 6);
    SampleConfig cfg;
    for (const auto& entry : entries) {
        Report rep = entry.run(cfg);
        INFO(entry.name);
        CHECK(rep.pass());
    }
}
