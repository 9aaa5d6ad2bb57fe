#include "jtk/families.hpp"

#include "jtk/poly.hpp"

#include <cmath>
#include <sstream>

namespace jtk {

Expr unipoly_to_expr(const UniPoly& p, const std::string& var) {
    std::vector<Expr> terms;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        const auto& [k, c] = *it;
        if (c == 0) continue;
        terms.push_back(
            Expr::prod({Expr::constant(c), Expr::pow(Expr::var(var), k)}));
    }
    return Expr::sum(std::move(terms));
}

std::optional<UniPoly> unipoly_from_expr(const Expr& e, const std::string& var) {
    auto p = normalize_polynomial(e);
    if (!p) return std::nullopt;
    UniPoly out;
    for (const auto& [mono, c] : p->terms()) {
        int k = 0;
        for (const auto& [v, d] : mono) {
            if (v != var) return std::nullopt;
            k = d;
        }
        out[k] = c;
    }
    return out;
}

FamilySolution solve_family(const FamilySpec& spec) {
    if (spec.n < 1 || spec.m < 1)
        throw std::invalid_argument("family needs n >= 1 and m >= 1");
    FamilySolution sol;
    auto bump = [](UniPoly& p, int k, const Rational& c) {
        if (c == 0) return;
        p[k] += c;
        if (p[k] == 0) p.erase(k);
    };
    for (const auto& [k, c] : spec.f) {
        if (c == 0) continue;
        if (k < 0) throw std::invalid_argument("f must be a polynomial");
        if (spec.n == 1) {
            bump(sol.g, k, c * (k - 1));
            if (k >= 1) bump(sol.h, k - 1, -c * k);
        } else {
            if (k == 0) throw NoPolynomialSolution();
            bump(sol.g, k + spec.n - 1, c * (k - 1));
            bump(sol.h, k - 1, -c * (k + spec.n - 1));
        }
    }
    return sol;
}

StructureReport verify_family_system(const FamilySpec& spec,
                                     const FamilySolution& sol) {
    Chart line({"t"});
    Expr t = Expr::var("t");
    Expr f = unipoly_to_expr(spec.f, "t");
    Expr g = unipoly_to_expr(sol.g, "t");
    Expr h = unipoly_to_expr(sol.h, "t");
    Expr tn = Expr::pow(t, spec.n);
    Expr eq1 = g + tn * h + Expr::integer(spec.n) * Expr::pow(t, spec.n - 1) * f;
    Expr eq2 = g.diff("t") + tn * h.diff("t");
    StructureReport rep;
    rep.add("g + t^n*h + n*t^(n-1)*f", is_zero(eq1, line));
    rep.add("g' + t^n*h'", is_zero(eq2, line));
    return rep;
}

namespace {

std::vector<std::string> family_chart_names(int m) {
    std::vector<std::string> names{"x", "z"};
    if (m == 1) {
        names.push_back("y");
    } else {
        for (int i = 1; i <= 2 * m - 1; ++i)
            names.push_back("y" + std::to_string(i));
    }
    return names;
}

}  // namespace

JacobiStructure build_family_structure(const FamilySpec& spec,
                                       const FamilySolution& sol) {
    Chart chart(family_chart_names(spec.m));
    SkewField pi = SkewField::multivector(chart, 2);
    SkewField e = SkewField::multivector(chart, 1);
    Expr gx, hz;
    for (int i = 0; i < 2 * spec.m - 1; ++i) {
        const std::string& yi = chart.name(2 + i);
        Expr f = unipoly_to_expr(spec.f, yi);
        pi.add_term({2 + i, 1}, f);  // f(y_i) d/dy_i ^ d/dz
        pi.add_term({2 + i, 0},
                    Expr::neg(Expr::pow(Expr::var(yi), spec.n) * f));
        gx = gx + unipoly_to_expr(sol.g, yi);
        hz = hz + unipoly_to_expr(sol.h, yi);
    }
    if (!gx.is_zero_literal()) e.add_term({0}, gx);
    if (!hz.is_zero_literal()) e.add_term({1}, hz);
    return JacobiStructure(chart, pi, e);
}

FamilyStructure build_family(const FamilySpec& spec) {
    FamilySolution sol = solve_family(spec);
    return FamilyStructure{spec, sol, build_family_structure(spec, sol)};
}

StructureReport obstruction_report(const JacobiStructure& j,
                                   const SampleConfig& cfg) {
    StructureReport rep = check_jacobi(j, cfg);
    rep.merge(singular_locus_report(j, cfg));
    // Run the degree check when E is exactly the unit Euler field.
    SkewField euler = SkewField::multivector(j.chart, 1);
    for (int i = 0; i < j.chart.dim(); ++i)
        euler.add_term({i}, Expr::var(j.chart.name(i)));
    SkewField d = sub(j.e, euler);
    d.prune();
    if (d.empty())
        rep.merge(euler_degree_check(
            j, std::vector<int>(j.chart.dim(), 1), cfg));
    return rep;
}

StructureReport obstruction_report(const FamilyStructure& fs,
                                   const SampleConfig& cfg) {
    StructureReport rep = obstruction_report(fs.j, cfg);
    bool f_constant = true;
    for (const auto& [k, c] : fs.spec.f)
        if (k > 0 && c != 0) f_constant = false;
    if (f_constant && fs.spec.n == 1 && !fs.spec.f.empty()) {
        rep.notes.push_back("f is a nonzero constant and n = 1: contact everywhere");
        return rep;
    }
    // The family defect is a multiple of f^2 in each transverse coordinate:
    // it touches zero without a sign change. Probe f itself for a real root
    // and confirm the defect vanishes on the corresponding hyperplane.
    Chart line({fs.j.chart.name(2)});
    Expr f_expr = unipoly_to_expr(fs.spec.f, line.name(0));
    if (auto w = find_sign_change_witness(f_expr, line, cfg)) {
        double y0 = w->point.begin()->second;
        Point full;
        for (const auto& n : fs.j.chart.names()) full[n] = 0.0;
        full[line.name(0)] = y0;
        Expr p = contact_defect(fs.j);
        double pv = std::abs(p.eval(full));
        if (pv <= 1e-10) {
            LocusWitness lw;
            lw.point = full;
            lw.value = pv;
            lw.gradient_norm = w->gradient_norm;  // gradient of the probed f
            rep.sign_change_found = true;
            rep.witnesses.push_back(lw);
            std::ostringstream os;
            os.precision(6);
            os << "f has a real root at " << line.name(0) << " = " << y0
               << "; the singular locus contains the codimension-1 slice "
               << "{" << line.name(0) << " = " << y0 << "}";
            rep.notes.push_back(os.str());
            rep.citations.push_back(kCiteProperObstruction);
            rep.citations.push_back(kCiteSemiConnectedObstruction);
        }
    } else {
        rep.notes.push_back("no real root of f found in the sample box");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Named example registry.

JacobiStructure reference_structure() {
    Chart c({"x", "y", "z"});
    auto e = [&](const char* s) { return parse_expr(s, c); };
    SkewField pi = SkewField::multivector(c, 2);
    pi.add_term({0, 1}, e("x^4 + y^4"));
    pi.add_term({2, 0}, e("x"));
    pi.add_term({1, 2}, e("-y"));
    SkewField ev = SkewField::multivector(c, 1);
    // The compatible transverse field is 2*d/dz (the bare d/dz printed in
    // one place fails the bracket identity; see README).
    ev.add_term({2}, Expr::integer(2));
    return JacobiStructure(c, pi, ev);
}

ContactForm sigma_contact_form() {
    Chart s({"p1", "p2", "p3"});
    auto e = [&](const char* str) { return parse_expr(str, s); };
    Expr cdenom = e("cos(p1^3*p2)^4 + sin(p1^3*p2)^4");
    SkewField alpha = SkewField::form(s, 1);
    alpha.add_term({2}, Expr::integer(1));
    alpha.add_term({1}, Expr::div(e("p1"), cdenom));
    alpha.add_term({0}, Expr::div(e("3*p2"), cdenom));
    return ContactForm{s, alpha};
}

JacobiStructure sigma_structure() {
    Chart s({"p1", "p2", "p3"});
    auto e = [&](const char* str) { return parse_expr(str, s); };
    SkewField pi = SkewField::multivector(s, 2);
    pi.add_term({0, 1}, e("cos(p1^3*p2)^4 + sin(p1^3*p2)^4"));
    pi.add_term({1, 2}, e("3*p2"));
    pi.add_term({2, 0}, e("p1"));
    SkewField ev = SkewField::multivector(s, 1);
    ev.add_term({2}, Expr::integer(2));
    return JacobiStructure(s, pi, ev);
}

SmoothMap polar_map() {
    Chart s({"p1", "p2", "p3"});
    Chart t({"x", "y", "z"});
    auto e = [&](const char* str) { return parse_expr(str, s); };
    // The first two components carry cos/sin in this order; the reversed
    // order flips the sign of the (x,y) pushforward relation (README).
    return SmoothMap(s, t,
                     {e("p1*cos(p1^3*p2)"), e("p1*sin(p1^3*p2)"), e("p3")});
}

namespace {

void expect(Report& rep, const std::string& id, bool ok) {
    CheckItem item;
    item.id = id;
    item.verdict.kind = ok ? ZeroVerdict::ProvedZero : ZeroVerdict::NonZero;
    rep.items.push_back(std::move(item));
}

Report run_reference(const SampleConfig& cfg) {
    JacobiStructure j = reference_structure();
    Report rep = check_jacobi(j, cfg);
    expect(rep, "identities proved exactly",
           rep.items[0].verdict.kind == ZeroVerdict::ProvedZero &&
               rep.items[1].verdict.kind == ZeroVerdict::ProvedZero);
    // Defect is 2*(x^4+y^4) in this normalization: exact comparison.
    Chart c = j.chart;
    Expr expected = parse_expr("2*(x^4 + y^4)", c);
    rep.add("defect == 2*(x^4+y^4)", is_zero(contact_defect(j) - expected, c, cfg));
    StructureReport locus = singular_locus_report(j, cfg);
    expect(rep, "no codim-1 witness", !locus.sign_change_found);
    rep.merge(locus);
    return rep;
}

Report run_sigma_contact(const SampleConfig& cfg) {
    ContactForm cf = sigma_contact_form();
    JacobiStructure conv = contact_form_to_jacobi(cf, cfg);
    JacobiStructure printed = sigma_structure();
    Report rep = check_jacobi(conv, cfg);
    rep.add("converted pi == printed pi",
            field_is_zero(sub(conv.pi, printed.pi), cfg).verdict);
    rep.add("converted E == 2*d/dp3",
            field_is_zero(sub(conv.e, printed.e), cfg).verdict);
    rep.items.push_back(
        {"contact defect nonvanishing",
         is_zero(contact_defect(printed), printed.chart, cfg), {}});
    // The defect must be nonzero (contact): flip the expectation.
    bool nonzero = rep.items.back().verdict.kind == ZeroVerdict::NonZero;
    rep.items.pop_back();
    expect(rep, "contact defect nonvanishing", nonzero);
    return rep;
}

Report run_polar_resolution(const SampleConfig& cfg) {
    ResolutionClaim claim{polar_map(), sigma_structure(), reference_structure(),
                          /*surjective=*/true, /*proper=*/false,
                          /*semi_connected=*/true};
    Report rep = check_contact_resolution(claim, cfg);
    expect(rep, "exactly 6 morphism relations", [&] {
        int count = 0;
        for (const auto& it : rep.items)
            if (it.id.rfind("pi:(", 0) == 0 || it.id.rfind("E:", 0) == 0) ++count;
        return count == 6;
    }());
    expect(rep, "no contradiction notice", rep.citations.empty());
    return rep;
}

Report run_standard_contact(const SampleConfig& cfg) {
    Chart c({"x", "y", "z"});
    SkewField alpha = SkewField::form(c, 1);
    alpha.add_term({2}, Expr::integer(1));
    alpha.add_term({1}, Expr::var("x"));
    JacobiStructure j = contact_form_to_jacobi(ContactForm{c, alpha}, cfg);
    Report rep = check_jacobi(j, cfg);
    StructureReport locus = singular_locus_report(j, cfg);
    expect(rep, "no codim-1 witness", !locus.sign_change_found);
    expect(rep, "defect nonvanishing",
           is_zero(contact_defect(j), c, cfg).kind == ZeroVerdict::NonZero);
    return rep;
}

Report run_family_example(const UniPoly& f, const UniPoly& expect_g,
                          const UniPoly& expect_h, bool expect_witness,
                          double witness_y, const SampleConfig& cfg) {
    FamilyStructure fs = build_family(FamilySpec{f, 1, 1});
    Report rep = verify_family_system(fs.spec, fs.sol);
    expect(rep, "g matches printed solution", fs.sol.g == expect_g);
    expect(rep, "h matches printed solution", fs.sol.h == expect_h);
    rep.merge(check_jacobi(fs.j, cfg));
    StructureReport obs = obstruction_report(fs, cfg);
    if (expect_witness) {
        bool found = obs.sign_change_found && !obs.witnesses.empty() &&
                     std::abs(obs.witnesses.back().point.at("y") - witness_y) < 1e-6;
        expect(rep, "codim-1 witness at expected root", found);
    } else {
        expect(rep, "no codim-1 witness", !obs.sign_change_found);
    }
    rep.merge(obs);
    return rep;
}

}  // namespace

const std::vector<ExampleEntry>& paper_examples() {
    static const std::vector<ExampleEntry> entries = {
        {"reference",
         "quartic singular Jacobi structure on R^3; Jacobi identities exact, "
         "singular only on the line {x=y=0}",
         run_reference},
        {"sigma_contact",
         "contact form on the resolving chart; conversion reproduces the "
         "printed bivector",
         run_sigma_contact},
        {"polar_resolution",
         "full contact-resolution claim for the quartic structure "
         "(surjective, not proper, semi-connected)",
         run_polar_resolution},
        {"standard_contact", "dz + x dy on R^3", run_standard_contact},
        {"example1",
         "family structure with f = 2 + 3y; codim-1 obstruction at y = -2/3",
         [](const SampleConfig& cfg) {
             return run_family_example({{0, 2}, {1, 3}}, {{0, -2}}, {{0, -3}},
                                       true, -2.0 / 3.0, cfg);
         }},
        {"example2",
         "family structure with f = y^3 + y^2 + y; codim-1 obstruction at y = 0",
         [](const SampleConfig& cfg) {
             return run_family_example({{1, 1}, {2, 1}, {3, 1}},
                                       {{2, 1}, {3, 2}},
                                       {{0, -1}, {1, -2}, {2, -3}}, true, 0.0,
                                       cfg);
         }},
        {"example3",
         "family structure with f = y^2 + y + 1 (no real root); no codim-1 "
         "witness",
         [](const SampleConfig& cfg) {
             return run_family_example({{0, 1}, {1, 1}, {2, 1}},
                                       {{0, -1}, {2, 1}}, {{0, -1}, {1, -2}},
                                       false, 0.0, cfg);
         }},
    };
    return entries;
}

}  // namespace jtk
