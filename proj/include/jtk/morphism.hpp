#pragma once

#include "jtk/jacobi.hpp"

#include <variant>

namespace jtk {

// Coordinate map between charts: one source-coordinate expression per
// target coordinate.
struct SmoothMap {
    Chart source;
    Chart target;
    std::vector<Expr> components;

    SmoothMap(Chart src, Chart tgt, std::vector<Expr> comps);
    const Expr& component(int target_index) const {
        return components.at(target_index);
    }
};

struct ChartMismatch : std::runtime_error {
    ChartMismatch() : std::runtime_error("field charts do not match the map") {}
};
struct DimensionMismatch : std::runtime_error {
    DimensionMismatch()
        : std::runtime_error("source and target dimensions must agree") {}
};
struct OddDimension : std::runtime_error {
    OddDimension()
        : std::runtime_error("symplectic checks require even dimension") {}
};

// Substitutes map components for the target coordinates of e.
Expr pullback(const Expr& e, const SmoothMap& map);

// For each target coordinate k: is_zero(X[phi^k] - (Y^k o phi)).
MorphismReport pushforward_check_vector(const SkewField& x, const SmoothMap& map,
                                        const SkewField& y,
                                        const SampleConfig& cfg = {});

// For each target pair i<j:
// is_zero(sum_{a<b} P^{ab}(dphi^i/da dphi^j/db - dphi^i/db dphi^j/da)
//         - Q^{ij} o phi).
MorphismReport pushforward_check_bivector(const SkewField& p, const SmoothMap& map,
                                          const SkewField& q,
                                          const SampleConfig& cfg = {});

// Both pushforward checks combined: C(target dim, 2) bivector relations plus
// target dim vector relations.
MorphismReport check_jacobi_morphism(const SmoothMap& map,
                                     const JacobiStructure& source,
                                     const JacobiStructure& target,
                                     const SampleConfig& cfg = {});

// User-supplied resolution claim; the flags are recorded, never verified.
struct ResolutionClaim {
    SmoothMap map;
    JacobiStructure source;
    JacobiStructure target;
    bool surjective = false;
    bool proper = false;
    bool semi_connected = false;
};

// Verifies that the source is a contact structure (check_jacobi + defect
// nonvanishing at samples) and that the map is a Jacobi morphism; echoes the
// asserted flags; attaches a contradiction notice when the target defect has
// a codimension-1 witness and the claim asserts proper or semi-connected.
MorphismReport check_contact_resolution(const ResolutionClaim& claim,
                                        const SampleConfig& cfg = {});

// (sigma, t) -> (phi(sigma), t): prepends t to both charts.
SmoothMap lift_resolution(const SmoothMap& map);

// (a) source is Poisson and nondegenerate at samples, (b) bivectors push
// forward, (c) homothety fields push forward.
MorphismReport check_homogeneous_symplectic_resolution(
    const SmoothMap& map, const HomogeneousPoisson& source,
    const HomogeneousPoisson& target, const SampleConfig& cfg = {});

}  // namespace jtk
