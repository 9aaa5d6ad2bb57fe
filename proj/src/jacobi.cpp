#include "jtk/jacobi.hpp"

#include "jtk/poly.hpp"

#include <cmath>
#include <sstream>

namespace jtk {

const char* const kCiteProperObstruction =
    "Thm: no proper contact resolution when the singular locus contains a "
    "codimension-1 submanifold";
const char* const kCiteSemiConnectedObstruction =
    "Thm: no semi-connected contact resolution when the singular locus "
    "contains a codimension-1 submanifold";

JacobiStructure::JacobiStructure(Chart c, SkewField pi_, SkewField e_)
    : chart(std::move(c)), pi(std::move(pi_)), e(std::move(e_)) {
    if (pi.chart() != chart || e.chart() != chart)
        throw std::invalid_argument("structure fields live on another chart");
    if (pi.degree() != 2 || e.degree() != 1 || !pi.is_multivector() ||
        !e.is_multivector())
        throw std::invalid_argument("expected a bivector and a vector field");
}

StructureReport check_jacobi(const JacobiStructure& j, const SampleConfig& cfg) {
    StructureReport rep;
    SkewField lhs1 = sub(schouten(j.pi, j.pi),
                         scale(Expr::integer(2), wedge(j.e, j.pi)));
    rep.add("[pi,pi] - 2*E^pi", field_is_zero(lhs1, cfg));
    rep.add("[E,pi]", field_is_zero(schouten(j.e, j.pi), cfg));
    return rep;
}

StructureReport check_jacobi_dim3(const Expr& fx, const Expr& fy, const Expr& fz,
                                  const Expr& gx, const Expr& gy, const Expr& gz,
                                  const Chart& chart, const SampleConfig& cfg) {
    if (chart.dim() != 3)
        throw std::invalid_argument("check_jacobi_dim3 needs a 3-dim chart");
    const std::string x = chart.name(0), y = chart.name(1), z = chart.name(2);
    Expr cond1 = fx * (fy.diff(z) - fz.diff(y) - gx) +
                 fy * (fz.diff(x) - fx.diff(z) - gy) +
                 fz * (fx.diff(y) - fy.diff(x) - gz);
    Expr r_xy = fz * (gx.diff(x) + gy.diff(y)) - fy * gy.diff(z) -
                fx * gx.diff(z) + gx * fz.diff(x) + gy * fz.diff(y) +
                gz * fz.diff(z);
    Expr r_yz = fx * (gz.diff(z) + gy.diff(y)) - fz * gz.diff(x) -
                fy * gy.diff(x) + gx * fx.diff(x) + gy * fx.diff(y) +
                gz * fx.diff(z);
    Expr r_zx = fy * (gx.diff(x) + gz.diff(z)) - fz * gz.diff(y) -
                fx * gx.diff(y) + gx * fy.diff(x) + gy * fy.diff(y) +
                gz * fy.diff(z);
    StructureReport rep;
    rep.add("condition-1", is_zero(cond1, chart, cfg));
    rep.add("condition-2:(" + x + "," + y + ")", is_zero(r_xy, chart, cfg));
    rep.add("condition-2:(" + y + "," + z + ")", is_zero(r_yz, chart, cfg));
    rep.add("condition-2:(" + z + "," + x + ")", is_zero(r_zx, chart, cfg));
    return rep;
}

Expr contact_defect(const JacobiStructure& j) {
    int dim = j.chart.dim();
    if (dim % 2 == 0) throw EvenDimension();
    int n = (dim - 1) / 2;
    SkewField top = wedge(j.e, mv_power(j.pi, n));
    SkewField::Index all(dim);
    for (int i = 0; i < dim; ++i) all[i] = i;
    return top.coeff(all);
}

std::optional<LocusWitness> find_sign_change_witness(const Expr& fn,
                                                     const Chart& chart,
                                                     const SampleConfig& cfg) {
    auto eval_at = [&](const Point& p) -> std::optional<double> {
        try {
            double v = fn.eval(p);
            if (!std::isfinite(v)) return std::nullopt;
            return v;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };
    for (int i = 0; i < cfg.samples; ++i) {
        Point a = sample_point(chart, cfg, 2 * i);
        Point b = sample_point(chart, cfg, 2 * i + 1);
        auto va = eval_at(a), vb = eval_at(b);
        if (!va || !vb) continue;
        if (std::abs(*va) <= cfg.tol || std::abs(*vb) <= cfg.tol) continue;
        if ((*va > 0) == (*vb > 0)) continue;
        // Bisect along the segment a + s*(b-a).
        double lo = 0.0, hi = 1.0, vlo = *va;
        Point mid = a;
        double vmid = vlo;
        for (int it = 0; it < 200; ++it) {
            double s = 0.5 * (lo + hi);
            for (const auto& [k, av] : a) mid[k] = av + s * (b.at(k) - av);
            auto vm = eval_at(mid);
            if (!vm) break;
            vmid = *vm;
            if (std::abs(vmid) <= 1e-12) break;
            if ((vmid > 0) == (vlo > 0)) {
                lo = s;
                vlo = vmid;
            } else {
                hi = s;
            }
        }
        if (std::abs(vmid) > 1e-10) continue;
        // Finite-difference gradient at the root.
        double h = 1e-6, norm2 = 0.0;
        bool ok = true;
        for (const auto& name : chart.names()) {
            Point pp = mid, pm = mid;
            pp[name] += h;
            pm[name] -= h;
            auto vp = eval_at(pp), vm2 = eval_at(pm);
            if (!vp || !vm2) {
                ok = false;
                break;
            }
            double g = (*vp - *vm2) / (2 * h);
            norm2 += g * g;
        }
        if (!ok || std::sqrt(norm2) <= 1e-6) continue;
        LocusWitness w;
        w.point = mid;
        w.value = std::abs(vmid);
        w.gradient_norm = std::sqrt(norm2);
        return w;
    }
    return std::nullopt;
}

StructureReport singular_locus_report(const JacobiStructure& j,
                                      const SampleConfig& cfg) {
    StructureReport rep;
    Expr p = contact_defect(j);
    rep.notes.push_back("contact defect P = " + p.str());
    ZeroVerdict zv = is_zero(p, j.chart, cfg);
    if (zv.is_zero()) {
        rep.defect_identically_zero = true;
        rep.notes.push_back("contact defect vanishes identically (" +
                            zv.describe() + ")");
        return rep;
    }
    double min_abs = std::numeric_limits<double>::infinity();
    Point min_at;
    for (int i = 0; i < 2 * cfg.samples; ++i) {
        Point q = sample_point(j.chart, cfg, i);
        try {
            double v = std::abs(p.eval(q));
            if (v < min_abs) {
                min_abs = v;
                min_at = q;
            }
        } catch (const std::exception&) {
        }
    }
    {
        std::ostringstream os;
        os.precision(6);
        os << "min |P| over sampled points: " << min_abs;
        rep.notes.push_back(os.str());
    }
    if (auto w = find_sign_change_witness(p, j.chart, cfg)) {
        rep.sign_change_found = true;
        rep.witnesses.push_back(*w);
        rep.citations.push_back(kCiteProperObstruction);
        rep.citations.push_back(kCiteSemiConnectedObstruction);
    } else {
        rep.notes.push_back("no sign change of the defect found in " +
                            std::to_string(cfg.samples) + " segment probes");
    }
    return rep;
}

namespace {

std::string fresh_name(const Chart& chart, const std::string& base) {
    if (!chart.has(base)) return base;
    for (int i = 0;; ++i) {
        std::string cand = base + std::to_string(i);
        if (!chart.has(cand)) return cand;
    }
}

std::optional<Rational> measure_homogeneity(const SkewField& pi,
                                            const SkewField& z) {
    SampleConfig quick;
    quick.samples = 16;
    SkewField lz = lie_derivative(z, pi);
    for (long c : {-1L, 1L, 0L, -2L, 2L}) {
        SkewField d = sub(lz, scale(Expr::integer(c), pi));
        if (field_is_zero(d, quick).verdict.is_zero()) return Rational(c);
    }
    return std::nullopt;
}

}  // namespace

HomogeneousPoisson poissonify(const JacobiStructure& j) {
    std::string t = fresh_name(j.chart, "t");
    std::vector<std::string> names{t};
    for (const auto& n : j.chart.names()) names.push_back(n);
    Chart big(names);
    Expr damp = Expr::exp(Expr::neg(Expr::var(t)));
    SkewField pi = SkewField::multivector(big, 2);
    for (const auto& [idx, c] : j.pi.terms())
        pi.add_term({idx[0] + 1, idx[1] + 1}, Expr::prod({damp, c}));
    // The dt ^ E block enters with a minus sign: that is the choice for
    // which the result is Poisson under this toolkit's bracket normalization.
    for (const auto& [idx, c] : j.e.terms())
        pi.add_term({0, idx[0] + 1}, Expr::neg(Expr::prod({damp, c})));
    SkewField z = SkewField::multivector(big, 1);
    z.add_term({0}, Expr::integer(1));
    auto c = measure_homogeneity(pi, z);
    return HomogeneousPoisson{big, pi, z, c.value_or(0)};
}

StructureReport check_poisson(const SkewField& pi, const SampleConfig& cfg) {
    StructureReport rep;
    rep.add("[pi,pi]", field_is_zero(schouten(pi, pi), cfg));
    return rep;
}

StructureReport check_homogeneous(const HomogeneousPoisson& hp,
                                  const SampleConfig& cfg) {
    StructureReport rep;
    SkewField lhs = sub(lie_derivative(hp.z, hp.pi),
                        scale(Expr::constant(hp.homogeneity_constant), hp.pi));
    rep.add("L_z(pi) - c*pi", field_is_zero(lhs, cfg));
    rep.measured_constant = hp.homogeneity_constant;
    if (hp.homogeneity_constant != 1)
        rep.notes.push_back(
            "recorded homothety constant " + hp.homogeneity_constant.str() +
            " differs from the unit-constant convention [Z,pi] = pi");
    return rep;
}

JacobiStructure slice_induce(const HomogeneousPoisson& hp,
                             const std::string& coord, const Rational& value) {
    int idx = hp.chart.index_of(coord);
    if (idx < 0) throw NonCoordinateHomothety();
    if (hp.z.terms().size() != 1) throw NonCoordinateHomothety();
    const auto& [zi, zc] = *hp.z.terms().begin();
    if (zi != SkewField::Index{idx} || !structurally_equal(zc, Expr::integer(1)))
        throw NonCoordinateHomothety();

    std::vector<std::string> names;
    for (int i = 0; i < hp.chart.dim(); ++i)
        if (i != idx) names.push_back(hp.chart.name(i));
    Chart small(names);
    auto shift = [&](int i) { return i < idx ? i : i - 1; };
    std::map<std::string, Expr> repl{{coord, Expr::constant(value)}};

    SkewField pi = SkewField::multivector(small, 2);
    SkewField e = SkewField::multivector(small, 1);
    for (const auto& [ij, c] : hp.pi.terms()) {
        Expr cs = c.substitute(repl);
        if (ij[0] == idx || ij[1] == idx) {
            // Coefficient of d/dcoord ^ d/di (after sorting) feeds -E^i.
            int other = ij[0] == idx ? ij[1] : ij[0];
            Expr signed_c = ij[0] == idx ? cs : Expr::neg(cs);
            e.add_term({shift(other)}, Expr::neg(signed_c));
        } else {
            pi.add_term({shift(ij[0]), shift(ij[1])}, cs);
        }
    }
    return JacobiStructure(small, pi, e);
}

namespace {

// Solves contract(V, vol) = beta for the standard volume on a chart.
SkewField sharp(const SkewField& beta, const SkewField& vol) {
    const Chart& chart = beta.chart();
    int p = chart.dim() - beta.degree();
    SkewField out = SkewField::multivector(chart, p);
    // Enumerate increasing p-tuples via the terms of a full wedge power; for
    // dim 3 and p <= 2 direct enumeration is simplest.
    std::function<void(SkewField::Index&, int)> rec = [&](SkewField::Index& cur,
                                                          int start) {
        if (static_cast<int>(cur.size()) == p) {
            SkewField basis = SkewField::multivector(chart, p);
            basis.add_term(cur, Expr::integer(1));
            SkewField image = contract(basis, vol);
            const auto& [comp, den] = *image.terms().begin();
            Expr num = beta.coeff(comp);
            if (!num.is_zero_literal()) out.add_term(cur, Expr::div(num, den));
            return;
        }
        for (int i = start; i < chart.dim(); ++i) {
            cur.push_back(i);
            rec(cur, i + 1);
            cur.pop_back();
        }
    };
    SkewField::Index cur;
    rec(cur, 0);
    return out;
}

}  // namespace

JacobiStructure contact_form_to_jacobi(const ContactForm& cf,
                                       const SampleConfig& cfg) {
    if (cf.chart.dim() != 3) throw UnsupportedDimension();
    if (cf.alpha.degree() != 1 || cf.alpha.is_multivector())
        throw std::invalid_argument("expected a degree-1 form");
    SkewField da = exterior_derivative(cf.alpha);
    SkewField ada = wedge(cf.alpha, da);
    Expr rho = ada.coeff({0, 1, 2});
    ZeroVerdict zv = is_zero(rho, cf.chart, cfg);
    if (zv.is_zero())
        throw NotContact("alpha ^ d(alpha) vanishes identically: " + zv.describe());
    // Gate: the volume coefficient must clear the tolerance at every sample.
    for (int i = 0; i < cfg.samples; ++i) {
        Point q = sample_point(cf.chart, cfg, i);
        Expr::EvalStats stats;
        double v;
        try {
            v = rho.eval(q, stats);
        } catch (const std::exception&) {
            continue;
        }
        if (std::abs(v) <= cfg.tol * (1.0 + stats.max_abs)) {
            std::ostringstream os;
            os << "alpha ^ d(alpha) vanishes at a sample point (value " << v
               << ")";
            throw NotContact(os.str());
        }
    }
    SkewField vol = standard_volume(cf.chart);
    auto over_rho = [&](const Expr& c) { return Expr::div(c, rho); };
    // Reeb field: i_R alpha = 1, i_R d(alpha) = 0.
    SkewField reeb = sharp(da, vol).mapped(over_rho);
    // Classical bivector: dual of alpha itself over the same volume factor.
    SkewField pi_true = sharp(cf.alpha, vol).mapped(over_rho);
    // Scale into this toolkit's bracket normalization (factor -2 on the
    // bivector, +2 on the Reeb field); see README.
    SkewField pi = scale(Expr::integer(-2), pi_true);
    SkewField e = scale(Expr::integer(2), reeb);
    return JacobiStructure(cf.chart, pi, e);
}

StructureReport euler_degree_check(const JacobiStructure& j,
                                   const std::vector<int>& weights,
                                   const SampleConfig& cfg) {
    int dim = j.chart.dim();
    if (static_cast<int>(weights.size()) != dim)
        throw std::invalid_argument("need one weight per coordinate");
    SkewField expected = SkewField::multivector(j.chart, 1);
    int d = 0;
    for (int i = 0; i < dim; ++i) {
        if (weights[i] <= 0)
            throw std::invalid_argument("weights must be positive");
        d += weights[i];
        expected.add_term(
            {i}, Expr::prod({Expr::integer(weights[i]), Expr::var(j.chart.name(i))}));
    }
    SkewField diff = sub(j.e, expected);
    diff.prune();
    if (!diff.empty()) throw NotEulerField();

    Expr p = contact_defect(j);
    Expr ep;
    for (int i = 0; i < dim; ++i)
        ep = ep + Expr::prod({Expr::integer(weights[i]),
                              Expr::var(j.chart.name(i)),
                              p.diff(j.chart.name(i))});
    StructureReport rep;
    rep.add("E[P] - " + std::to_string(d) + "*P",
            is_zero(ep - Expr::integer(d) * p, j.chart, cfg));
    rep.measured_constant = Rational(d);
    rep.notes.push_back("degree d = " + std::to_string(d) + " (" +
                        (d % 2 ? "odd" : "even") + ")");
    if (d % 2 == 1) {
        if (auto w = find_sign_change_witness(p, j.chart, cfg)) {
            rep.sign_change_found = true;
            rep.witnesses.push_back(*w);
            rep.citations.push_back(kCiteProperObstruction);
            rep.citations.push_back(kCiteSemiConnectedObstruction);
        }
    }
    return rep;
}

}  // namespace jtk
