#include "jtk/zero.hpp"

#include "jtk/poly.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace jtk {

std::string ZeroVerdict::describe() const {
    std::ostringstream os;
    os.precision(6);
    switch (kind) {
        case ProvedZero:
            os << "proved zero (exact polynomial normalization)";
            break;
        case NumericallyZero:
            os << "numerically zero (" << samples
               << " samples, max residual " << max_residual << ")";
            break;
        case NonZero:
            os << "nonzero at {";
            for (auto it = witness.begin(); it != witness.end(); ++it) {
                if (it != witness.begin()) os << ", ";
                os << it->first << "=" << it->second;
            }
            os << "}: value " << witness_value;
            break;
    }
    return os.str();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct SampleResult {
    double value = 0.0;
    double residual = 0.0;
};

// Evaluates at the index-th sample, redrawing deterministically while the
// point sits within 1e-6 of a pole of e.
SampleResult evaluate_sample(const Expr& e, const Chart& chart,
                             const SampleConfig& cfg, int index) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        Point p = sample_point(chart, cfg, index, attempt);
        Expr::EvalStats stats;
        double v;
        try {
            v = e.eval(p, stats);
        } catch (const DivisionNearZero&) {
            continue;
        }
        if (stats.min_denominator < 1e-6) continue;
        if (!std::isfinite(v)) continue;
        SampleResult r;
        r.value = v;
        r.residual = std::abs(v) / (1.0 + stats.max_abs);
        return r;
    }
    throw std::runtime_error(
        "could not draw a sample point away from the poles of the expression");
}

ZeroVerdict verdict_from_samples(const Expr& e, const Chart& chart,
                                 const SampleConfig& cfg,
                                 const std::vector<SampleResult>& results) {
    ZeroVerdict out;
    out.samples = cfg.samples;
    int first_fail = -1;
    for (int i = 0; i < cfg.samples; ++i) {
        if (results[i].residual > out.max_residual)
            out.max_residual = results[i].residual;
        if (first_fail < 0 && results[i].residual > cfg.tol) first_fail = i;
    }
    if (first_fail < 0) {
        out.kind = ZeroVerdict::NumericallyZero;
    } else {
        out.kind = ZeroVerdict::NonZero;
        // Same redraw sequence as evaluate_sample, so the stored witness is
        // the point that actually produced the failing value.
        for (int attempt = 0; attempt < 100; ++attempt) {
            Point p = sample_point(chart, cfg, first_fail, attempt);
            Expr::EvalStats stats;
            double v;
            try {
                v = e.eval(p, stats);
            } catch (const DivisionNearZero&) {
                continue;
            }
            if (stats.min_denominator < 1e-6) continue;
            if (!std::isfinite(v)) continue;
            out.witness = p;
            out.witness_value = v;
            break;
        }
    }
    return out;
}

}  // namespace

Point sample_point(const Chart& chart, const SampleConfig& cfg, int index,
                   int attempt) {
    std::uint64_t s = splitmix64(cfg.seed ^ splitmix64(
        0x5eedULL + 0x10001ULL * static_cast<std::uint64_t>(index) +
        0x9177ULL * static_cast<std::uint64_t>(attempt)));
    std::mt19937_64 rng(s);
    std::uniform_real_distribution<double> dist(-cfg.box, cfg.box);
    Point p;
    for (const auto& name : chart.names()) p[name] = dist(rng);
    return p;
}

ZeroVerdict is_zero_sampled_serial(const Expr& e, const Chart& chart,
                                   const SampleConfig& cfg) {
    std::vector<SampleResult> results(cfg.samples);
    for (int i = 0; i < cfg.samples; ++i)
        results[i] = evaluate_sample(e, chart, cfg, i);
    return verdict_from_samples(e, chart, cfg, results);
}

ZeroVerdict is_zero_sampled(const Expr& e, const Chart& chart,
                            const SampleConfig& cfg) {
    std::vector<SampleResult> results(cfg.samples);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < cfg.samples; ++i)
        results[i] = evaluate_sample(e, chart, cfg, i);
    return verdict_from_samples(e, chart, cfg, results);
}

ZeroVerdict is_zero(const Expr& e, const Chart& chart, const SampleConfig& cfg) {
    if (auto p = normalize_polynomial(e)) {
        if (p->is_zero()) {
            ZeroVerdict out;
            out.kind = ZeroVerdict::ProvedZero;
            return out;
        }
        // A nonzero polynomial is nonzero as a function; report the sample
        // with the largest value as witness.
        std::vector<SampleResult> results(cfg.samples);
        for (int i = 0; i < cfg.samples; ++i)
            results[i] = evaluate_sample(e, chart, cfg, i);
        int best = 0;
        ZeroVerdict out;
        out.kind = ZeroVerdict::NonZero;
        out.samples = cfg.samples;
        for (int i = 0; i < cfg.samples; ++i) {
            if (results[i].residual > out.max_residual)
                out.max_residual = results[i].residual;
            if (std::abs(results[i].value) > std::abs(results[best].value))
                best = i;
        }
        out.witness = sample_point(chart, cfg, best, 0);
        out.witness_value = results[best].value;
        return out;
    }
    return is_zero_sampled(e, chart, cfg);
}

}  // namespace jtk
