#pragma once

#include "jtk/expr.hpp"

#include <cstdint>
#include <string>

namespace jtk {

struct SampleConfig {
    int samples = 64;
    double box = 2.0;      // sample uniformly in [-box, box]^dim
    double tol = 1e-9;
    std::uint64_t seed = 0;
};

// Tri-state zero test result.
struct ZeroVerdict {
    enum Kind { ProvedZero, NumericallyZero, NonZero };

    Kind kind = ProvedZero;
    int samples = 0;
    double max_residual = 0.0;  // max |value| / (1 + magnitude) over samples
    Point witness;              // NonZero only
    double witness_value = 0.0;

    bool is_zero() const { return kind != NonZero; }
    std::string describe() const;
};

// Decides whether e vanishes identically on the chart. Polynomial
// expressions are normalized exactly: the empty normal form is ProvedZero
// and a nonempty one is NonZero, with a sampled witness. Otherwise e is
// evaluated at seeded sample points; a sample whose evaluation passes within
// 1e-6 of a pole (small Div denominator or negative power of a small base)
// is redrawn deterministically. Residuals are relative:
// |value| <= tol * (1 + max |intermediate|).
ZeroVerdict is_zero(const Expr& e, const Chart& chart,
                    const SampleConfig& cfg = {});

// Serial reference for the sampling path (no exact shortcut, no OpenMP).
// Must agree with is_zero on non-polynomial input bit for bit.
ZeroVerdict is_zero_sampled_serial(const Expr& e, const Chart& chart,
                                   const SampleConfig& cfg = {});

// The sampling path as used by is_zero (OpenMP-parallel when enabled).
ZeroVerdict is_zero_sampled(const Expr& e, const Chart& chart,
                            const SampleConfig& cfg = {});

// Deterministic sample point: depends only on (cfg.seed, chart, index,
// attempt), never on evaluation order.
Point sample_point(const Chart& chart, const SampleConfig& cfg, int index,
                   int attempt = 0);

}  // namespace jtk
