#pragma once

#include "jtk/multivector.hpp"
#include "jtk/report.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace jtk {

// Bivector/vector pair (pi, E) on a chart. Constructors never validate;
// run check_jacobi to find out whether the pair is actually Jacobi.
struct JacobiStructure {
    Chart chart;
    SkewField pi;  // degree 2 multivector
    SkewField e;   // degree 1 multivector

    JacobiStructure(Chart c, SkewField pi_, SkewField e_);
};

// Poisson bivector with a homothety field z satisfying
// lie_derivative(z, pi) = homogeneity_constant * pi (measured, not assumed).
struct HomogeneousPoisson {
    Chart chart;
    SkewField pi;
    SkewField z;
    Rational homogeneity_constant;
};

struct ContactForm {
    Chart chart;
    SkewField alpha;  // degree 1 form
};

struct EvenDimension : std::runtime_error {
    EvenDimension() : std::runtime_error("chart dimension must be odd") {}
};
struct NotContact : std::runtime_error {
    explicit NotContact(const std::string& w) : std::runtime_error(w) {}
};
struct UnsupportedDimension : std::runtime_error {
    UnsupportedDimension()
        : std::runtime_error("symbolic contact conversion requires dimension 3") {}
};
struct NonCoordinateHomothety : std::runtime_error {
    NonCoordinateHomothety()
        : std::runtime_error(
              "homothety field is not a unit coordinate field; general "
              "transversals are out of scope") {}
};
struct NotEulerField : std::runtime_error {
    NotEulerField()
        : std::runtime_error("E is not the weighted Euler field for the given weights") {}
};

// Checks the two defining identities: schouten(pi,pi) - 2*wedge(E,pi) = 0
// and schouten(E,pi) = 0.
StructureReport check_jacobi(const JacobiStructure& j, const SampleConfig& cfg = {});

// The four scalar relations for a dimension-3 structure
//   pi = fz dx^dy + fy dz^dx + fx dy^dz,  E = gx dx + gy dy + gz dz
// written out explicitly; equivalent to check_jacobi on the assembled pair.
StructureReport check_jacobi_dim3(const Expr& fx, const Expr& fy, const Expr& fz,
                                  const Expr& gx, const Expr& gy, const Expr& gz,
                                  const Chart& chart, const SampleConfig& cfg = {});

// Top coefficient P of wedge(E, pi^n) on a (2n+1)-chart; the structure is
// contact exactly where P is nonzero.
Expr contact_defect(const JacobiStructure& j);

// Samples the contact defect over cfg.box: detects sign changes along random
// segments (bisected to a |P| <= 1e-10 witness with finite-difference
// gradient > 1e-6), an identically-zero defect, or no zero found.
StructureReport singular_locus_report(const JacobiStructure& j,
                                      const SampleConfig& cfg = {});

// Builds the homogeneous Poisson structure exp(-t)*(pi - dt^E) with
// homothety field dt on the chart (t, ...). The sign of the dt^E term is the
// one that makes the output Poisson; see README.
HomogeneousPoisson poissonify(const JacobiStructure& j);

// Verdict of is_zero(schouten(pi,pi)).
StructureReport check_poisson(const SkewField& pi, const SampleConfig& cfg = {});

// Verdict of is_zero(lie_derivative(z,pi) - c*pi) with the recorded constant.
StructureReport check_homogeneous(const HomogeneousPoisson& hp,
                                  const SampleConfig& cfg = {});

// Induced Jacobi structure on the slice {coord = value} when hp.z is exactly
// the coordinate field d/dcoord. Inverts poissonify at t = 0.
JacobiStructure slice_induce(const HomogeneousPoisson& hp,
                             const std::string& coord, const Rational& value);

// Dimension-3 symbolic conversion of a contact form to the Jacobi pair
// (pi, E): Reeb field and bivector via the volume coefficient of
// alpha^d(alpha), scaled into the toolkit's bracket normalization (README).
JacobiStructure contact_form_to_jacobi(const ContactForm& cf,
                                       const SampleConfig& cfg = {});

// Requires J.e = sum_i w_i x_i d/dx_i symbolically; checks E[P] = d*P with
// d = sum of weights, P the contact defect. Reports the parity of d and the
// codimension-1 obstruction when d is odd and P changes sign.
StructureReport euler_degree_check(const JacobiStructure& j,
                                   const std::vector<int>& weights,
                                   const SampleConfig& cfg = {});

// Probes fn for sign changes along cfg.samples random segments in the box;
// on success bisects to |fn| <= 1e-10 and requires a finite-difference
// gradient norm > 1e-6 before returning the witness.
std::optional<LocusWitness> find_sign_change_witness(const Expr& fn,
                                                     const Chart& chart,
                                                     const SampleConfig& cfg = {});

// Citation strings used in reports.
extern const char* const kCiteProperObstruction;
extern const char* const kCiteSemiConnectedObstruction;

}  // namespace jtk
