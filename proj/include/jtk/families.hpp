#pragma once

#include "jtk/jacobi.hpp"
#include "jtk/morphism.hpp"

#include <functional>
#include <map>

namespace jtk {

// Univariate polynomial as degree -> coefficient (zero coefficients absent).
using UniPoly = std::map<int, Rational>;

Expr unipoly_to_expr(const UniPoly& p, const std::string& var);
// Fails (nullopt) when e is not a polynomial in the single variable var.
std::optional<UniPoly> unipoly_from_expr(const Expr& e, const std::string& var);

// Input to the one-parameter family construction: bivector
//   pi = sum_i f(y_i) d/dy_i ^ d/dz - sum_i y_i^n f(y_i) d/dy_i ^ d/dx
// on the (2m+1)-chart (x, z, y_1..y_{2m-1}), with E = (sum g(y_i)) d/dx +
// (sum h(y_i)) d/dz to be solved for.
struct FamilySpec {
    UniPoly f;
    int n = 1;
    int m = 1;
};

struct FamilySolution {
    UniPoly g, h;
};

struct NoPolynomialSolution : std::runtime_error {
    NoPolynomialSolution()
        : std::runtime_error(
              "no polynomial solution: for n >= 2 the constant term of f "
              "forces a 1/t coefficient in h; f must have zero constant term") {}
};

// Closed-form monomial-by-monomial solution of the linear system
//   g(t) + t^n h(t) = -n t^(n-1) f(t),   g'(t) + t^n h'(t) = 0.
FamilySolution solve_family(const FamilySpec& spec);

// Exact re-substitution of (g,h) into the two system equations; both items
// must be ProvedZero.
StructureReport verify_family_system(const FamilySpec& spec,
                                     const FamilySolution& sol);

// The structure on chart (x, z, y...) built from spec and sol. For m = 1 the
// single transverse coordinate is named y; otherwise y1..y_{2m-1}.
JacobiStructure build_family_structure(const FamilySpec& spec,
                                       const FamilySolution& sol);

// Convenience bundle keeping the family data next to the built structure so
// obstruction reporting can probe f directly.
struct FamilyStructure {
    FamilySpec spec;
    FamilySolution sol;
    JacobiStructure j;
};
FamilyStructure build_family(const FamilySpec& spec);

// check_jacobi + singular-locus probing + (for unit Euler E) degree check.
StructureReport obstruction_report(const JacobiStructure& j,
                                   const SampleConfig& cfg = {});

// Family-aware variant: additionally bisects a real root of f itself (the
// defect is -f^2-shaped, so it touches zero without changing sign; the sign
// change lives in f) and confirms the defect vanishes there.
StructureReport obstruction_report(const FamilyStructure& fs,
                                   const SampleConfig& cfg = {});

// Named regression entry: run() executes the entry's expected-verdict suite;
// the returned report passes iff every expectation matched.
struct ExampleEntry {
    std::string name;
    std::string description;
    std::function<Report(const SampleConfig&)> run;
};

const std::vector<ExampleEntry>& paper_examples();

// Pre-built structures shared by the registry and the test-suite.
JacobiStructure reference_structure();
JacobiStructure sigma_structure();
ContactForm sigma_contact_form();
SmoothMap polar_map();  // sigma chart -> reference chart

}  // namespace jtk
