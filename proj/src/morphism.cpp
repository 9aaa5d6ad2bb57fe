#include "jtk/morphism.hpp"

#include <cmath>
#include <sstream>

namespace jtk {

SmoothMap::SmoothMap(Chart src, Chart tgt, std::vector<Expr> comps)
    : source(std::move(src)), target(std::move(tgt)), components(std::move(comps)) {
    if (static_cast<int>(components.size()) != target.dim())
        throw std::invalid_argument("need one component per target coordinate");
    for (const auto& c : components)
        for (const auto& v : c.variables())
            if (!source.has(v))
                throw std::invalid_argument("map component uses unknown coordinate " + v);
}

Expr pullback(const Expr& e, const SmoothMap& map) {
    std::map<std::string, Expr> repl;
    for (int k = 0; k < map.target.dim(); ++k)
        repl[map.target.name(k)] = map.components[k];
    return e.substitute(repl);
}

namespace {

// Synthetic check item for "must be nonvanishing at every sample" gates:
// passes (zero-verdict) when the margin holds, fails with a witness when the
// quantity drops under the tolerance somewhere.
CheckItem nonvanishing_item(std::string id, const Expr& q, const Chart& chart,
                            const SampleConfig& cfg) {
    CheckItem item;
    item.id = std::move(id);
    item.verdict.kind = ZeroVerdict::NumericallyZero;
    item.verdict.samples = cfg.samples;
    for (int i = 0; i < cfg.samples; ++i) {
        Point p = sample_point(chart, cfg, i);
        Expr::EvalStats stats;
        double v;
        try {
            v = q.eval(p, stats);
        } catch (const std::exception&) {
            continue;
        }
        if (std::abs(v) <= cfg.tol * (1.0 + stats.max_abs)) {
            item.verdict.kind = ZeroVerdict::NonZero;
            item.verdict.witness = p;
            item.verdict.witness_value = v;
            return item;
        }
    }
    return item;
}

void merge_prefixed(MorphismReport& into, StructureReport from,
                    const std::string& prefix) {
    for (auto& it : from.items) it.id = prefix + it.id;
    into.merge(from);
}

}  // namespace

MorphismReport pushforward_check_vector(const SkewField& x, const SmoothMap& map,
                                        const SkewField& y,
                                        const SampleConfig& cfg) {
    if (x.chart() != map.source || y.chart() != map.target)
        throw ChartMismatch();
    if (x.degree() != 1 || y.degree() != 1)
        throw std::invalid_argument("expected vector fields");
    MorphismReport rep;
    for (int k = 0; k < map.target.dim(); ++k) {
        Expr lhs;
        for (const auto& [idx, c] : x.terms())
            lhs = lhs + c * map.components[k].diff(map.source.name(idx[0]));
        Expr rhs = pullback(y.coeff({k}), map);
        rep.add("E:" + map.target.name(k), is_zero(lhs - rhs, map.source, cfg));
    }
    return rep;
}

MorphismReport pushforward_check_bivector(const SkewField& p, const SmoothMap& map,
                                          const SkewField& q,
                                          const SampleConfig& cfg) {
    if (p.chart() != map.source || q.chart() != map.target)
        throw ChartMismatch();
    if (p.degree() != 2 || q.degree() != 2)
        throw std::invalid_argument("expected bivector fields");
    MorphismReport rep;
    for (int i = 0; i < map.target.dim(); ++i) {
        for (int j = i + 1; j < map.target.dim(); ++j) {
            Expr lhs;
            for (const auto& [idx, c] : p.terms()) {
                const std::string& a = map.source.name(idx[0]);
                const std::string& b = map.source.name(idx[1]);
                lhs = lhs + c * (map.components[i].diff(a) * map.components[j].diff(b) -
                                 map.components[i].diff(b) * map.components[j].diff(a));
            }
            Expr rhs = pullback(q.coeff({i, j}), map);
            rep.add("pi:(" + map.target.name(i) + "," + map.target.name(j) + ")",
                    is_zero(lhs - rhs, map.source, cfg));
        }
    }
    return rep;
}

MorphismReport check_jacobi_morphism(const SmoothMap& map,
                                     const JacobiStructure& source,
                                     const JacobiStructure& target,
                                     const SampleConfig& cfg) {
    MorphismReport rep = pushforward_check_bivector(source.pi, map, target.pi, cfg);
    rep.merge(pushforward_check_vector(source.e, map, target.e, cfg));
    return rep;
}

MorphismReport check_contact_resolution(const ResolutionClaim& claim,
                                        const SampleConfig& cfg) {
    if (claim.source.chart.dim() != claim.target.chart.dim())
        throw DimensionMismatch();
    if (claim.source.chart.dim() % 2 == 0) throw EvenDimension();

    MorphismReport rep;
    rep.asserted_flags["surjective"] = claim.surjective;
    rep.asserted_flags["proper"] = claim.proper;
    rep.asserted_flags["semi_connected"] = claim.semi_connected;

    merge_prefixed(rep, check_jacobi(claim.source, cfg), "source:");
    rep.items.push_back(nonvanishing_item("source:contact-defect-nonvanishing",
                                          contact_defect(claim.source),
                                          claim.source.chart, cfg));
    rep.merge(check_jacobi_morphism(claim.map, claim.source, claim.target, cfg));

    StructureReport locus = singular_locus_report(claim.target, cfg);
    rep.notes.insert(rep.notes.end(), locus.notes.begin(), locus.notes.end());
    if (locus.sign_change_found) {
        rep.sign_change_found = true;
        rep.witnesses = locus.witnesses;
        if (claim.proper) {
            rep.notes.push_back(
                "contradiction: claim asserts a proper resolution but the "
                "target defect has a codimension-1 zero-locus witness");
            rep.citations.push_back(kCiteProperObstruction);
        }
        if (claim.semi_connected) {
            rep.notes.push_back(
                "contradiction: claim asserts a semi-connected resolution but "
                "the target defect has a codimension-1 zero-locus witness");
            rep.citations.push_back(kCiteSemiConnectedObstruction);
        }
    }
    return rep;
}

SmoothMap lift_resolution(const SmoothMap& map) {
    std::string t = "t";
    for (int i = 0; map.source.has(t) || map.target.has(t); ++i)
        t = "t" + std::to_string(i);
    std::vector<std::string> src{t}, tgt{t};
    for (const auto& n : map.source.names()) src.push_back(n);
    for (const auto& n : map.target.names()) tgt.push_back(n);
    std::vector<Expr> comps{Expr::var(t)};
    for (const auto& c : map.components) comps.push_back(c);
    return SmoothMap(Chart(src), Chart(tgt), std::move(comps));
}

MorphismReport check_homogeneous_symplectic_resolution(
    const SmoothMap& map, const HomogeneousPoisson& source,
    const HomogeneousPoisson& target, const SampleConfig& cfg) {
    if (source.chart.dim() != target.chart.dim()) throw DimensionMismatch();
    if (source.chart.dim() % 2 != 0) throw OddDimension();

    MorphismReport rep;
    merge_prefixed(rep, check_poisson(source.pi, cfg), "source:");
    int half = source.chart.dim() / 2;
    SkewField top = mv_power(source.pi, half);
    SkewField::Index all(source.chart.dim());
    for (int i = 0; i < source.chart.dim(); ++i) all[i] = i;
    rep.items.push_back(nonvanishing_item("source:symplectic-nondegeneracy",
                                          top.coeff(all), source.chart, cfg));
    rep.merge(pushforward_check_bivector(source.pi, map, target.pi, cfg));
    MorphismReport zrep = pushforward_check_vector(source.z, map, target.z, cfg);
    for (auto& it : zrep.items) it.id = "Z" + it.id.substr(1);
    rep.merge(zrep);
    return rep;
}

}  // namespace jtk
