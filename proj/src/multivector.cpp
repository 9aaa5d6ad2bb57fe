#include "jtk/multivector.hpp"

#include "jtk/poly.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace jtk {

namespace {

// Sorts idx into strictly increasing order; returns the permutation sign, or
// nullopt when an index repeats (the term vanishes).
std::optional<int> sort_index(SkewField::Index& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        for (std::size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
            std::swap(idx[j], idx[j - 1]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return std::nullopt;
    return sign;
}

void require_same_chart(const SkewField& a, const SkewField& b) {
    if (a.chart() != b.chart())
        throw std::invalid_argument("fields live on different charts");
}

void for_each_tuple(int n, int k, SkewField::Index& cur,
                    const std::function<void(const SkewField::Index&)>& fn,
                    int start = 0) {
    if (static_cast<int>(cur.size()) == k) {
        fn(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        for_each_tuple(n, k, cur, fn, i + 1);
        cur.pop_back();
    }
}

}  // namespace

SkewField::SkewField(Chart chart, int degree, Variance variance)
    : chart_(std::move(chart)), degree_(degree), variance_(variance) {
    if (degree < 0 || degree > chart_.dim())
        throw std::invalid_argument("degree out of range for chart");
}

void SkewField::add_term(Index idx, Expr coeff) {
    if (static_cast<int>(idx.size()) != degree_)
        throw std::invalid_argument("index tuple size does not match degree");
    for (int i : idx)
        if (i < 0 || i >= chart_.dim())
            throw std::invalid_argument("index out of chart range");
    auto sign = sort_index(idx);
    if (!sign) return;
    if (*sign < 0) coeff = Expr::neg(std::move(coeff));
    auto it = terms_.find(idx);
    Expr total = it == terms_.end() ? coeff : Expr::sum({it->second, coeff});
    if (total.is_zero_literal())
        terms_.erase(idx);
    else
        terms_[idx] = std::move(total);
}

Expr SkewField::coeff(const Index& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Expr() : it->second;
}

void SkewField::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        auto p = normalize_polynomial(it->second);
        if (p && p->is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
}

SkewField SkewField::mapped(const std::function<Expr(const Expr&)>& f) const {
    SkewField out(chart_, degree_, variance_);
    for (const auto& [idx, c] : terms_) {
        Expr c2 = f(c);
        if (!c2.is_zero_literal()) out.terms_[idx] = std::move(c2);
    }
    return out;
}

std::string SkewField::str() const {
    std::ostringstream os;
    for (const auto& [idx, c] : terms_) {
        os << "( ";
        for (int i : idx) os << chart_.name(i) << ' ';
        os << ") = " << c.str() << '\n';
    }
    return os.str();
}

SkewField add(const SkewField& a, const SkewField& b) {
    require_same_chart(a, b);
    if (a.degree() != b.degree() || a.variance() != b.variance())
        throw std::invalid_argument("cannot add fields of different shape");
    SkewField out = a;
    for (const auto& [idx, c] : b.terms()) out.add_term(idx, c);
    return out;
}

SkewField sub(const SkewField& a, const SkewField& b) {
    return add(a, scale(Expr::integer(-1), b));
}

SkewField scale(const Expr& s, const SkewField& a) {
    return a.mapped([&](const Expr& c) { return Expr::prod({s, c}); });
}

SkewField wedge(const SkewField& a, const SkewField& b) {
    require_same_chart(a, b);
    if (a.variance() != b.variance())
        throw std::invalid_argument("cannot wedge a multivector with a form");
    SkewField out(a.chart(), a.degree() + b.degree(), a.variance());
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            SkewField::Index idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            out.add_term(std::move(idx), Expr::prod({ca, cb}));
        }
    }
    return out;
}

SkewField schouten(const SkewField& p, const SkewField& q) {
    require_same_chart(p, q);
    if (!p.is_multivector() || !q.is_multivector())
        throw std::invalid_argument("schouten bracket expects multivectors");
    const Chart& chart = p.chart();
    int deg = p.degree() + q.degree() - 1;
    if (deg < 0) deg = 0;  // bracket of two functions vanishes
    SkewField out = SkewField::multivector(chart, deg);
    if (p.degree() + q.degree() == 0) return out;
    // Odd-coordinate antibracket: sum over coordinates of
    //   d_r P/d theta_i * dQ/dx_i - dP/dx_i * d_l Q/d theta_i.
    for (const auto& [ia, ca] : p.terms()) {
        for (std::size_t pos = 0; pos < ia.size(); ++pos) {
            int i = ia[pos];
            int sr = ((ia.size() - 1 - pos) % 2 == 0) ? 1 : -1;
            SkewField::Index rest(ia);
            rest.erase(rest.begin() + pos);
            for (const auto& [ib, cb] : q.terms()) {
                Expr d = cb.diff(chart.name(i));
                if (d.is_zero_literal()) continue;
                SkewField::Index idx = rest;
                idx.insert(idx.end(), ib.begin(), ib.end());
                Expr c = Expr::prod({ca, d});
                out.add_term(std::move(idx), sr < 0 ? Expr::neg(c) : c);
            }
        }
    }
    for (const auto& [ib, cb] : q.terms()) {
        for (std::size_t pos = 0; pos < ib.size(); ++pos) {
            int i = ib[pos];
            int sl = (pos % 2 == 0) ? 1 : -1;
            SkewField::Index rest(ib);
            rest.erase(rest.begin() + pos);
            for (const auto& [ia, ca] : p.terms()) {
                Expr d = ca.diff(chart.name(i));
                if (d.is_zero_literal()) continue;
                SkewField::Index idx = ia;
                idx.insert(idx.end(), rest.begin(), rest.end());
                Expr c = Expr::prod({d, cb});
                out.add_term(std::move(idx), sl > 0 ? Expr::neg(c) : c);
            }
        }
    }
    return out;
}

SkewField exterior_derivative(const SkewField& omega) {
    if (omega.is_multivector())
        throw std::invalid_argument("exterior derivative expects a form");
    const Chart& chart = omega.chart();
    SkewField out = SkewField::form(chart, omega.degree() + 1);
    for (const auto& [idx, c] : omega.terms()) {
        for (int i = 0; i < chart.dim(); ++i) {
            Expr d = c.diff(chart.name(i));
            if (d.is_zero_literal()) continue;
            SkewField::Index idx2{i};
            idx2.insert(idx2.end(), idx.begin(), idx.end());
            out.add_term(std::move(idx2), std::move(d));
        }
    }
    return out;
}

SkewField contract(const SkewField& p, const SkewField& omega) {
    require_same_chart(p, omega);
    if (!p.is_multivector() || omega.is_multivector())
        throw std::invalid_argument("contract expects (multivector, form)");
    if (p.degree() > omega.degree())
        throw std::invalid_argument("contraction degree exceeds form degree");
    SkewField out = SkewField::form(p.chart(), omega.degree() - p.degree());
    for (const auto& [ip, cp] : p.terms()) {
        for (const auto& [io, co] : omega.terms()) {
            SkewField::Index cur = io;
            int sign = 1;
            bool alive = true;
            for (int a : ip) {
                auto it = std::find(cur.begin(), cur.end(), a);
                if (it == cur.end()) {
                    alive = false;
                    break;
                }
                if ((it - cur.begin()) % 2 != 0) sign = -sign;
                cur.erase(it);
            }
            if (!alive) continue;
            Expr c = Expr::prod({cp, co});
            out.add_term(std::move(cur), sign < 0 ? Expr::neg(c) : c);
        }
    }
    return out;
}

SkewField lie_derivative(const SkewField& x, const SkewField& p) {
    if (!x.is_multivector() || x.degree() != 1)
        throw std::invalid_argument("lie_derivative expects a vector field");
    if (p.is_multivector()) return schouten(x, p);
    SkewField out = contract(x, exterior_derivative(p));
    if (p.degree() >= 1)
        out = add(out, exterior_derivative(contract(x, p)));
    return out;
}

SkewField standard_volume(const Chart& chart) {
    SkewField vol = SkewField::form(chart, chart.dim());
    SkewField::Index all(chart.dim());
    for (int i = 0; i < chart.dim(); ++i) all[i] = i;
    vol.add_term(std::move(all), Expr::integer(1));
    return vol;
}

SkewField divergence(const SkewField& p, const SkewField& vol) {
    require_same_chart(p, vol);
    if (!p.is_multivector() || vol.is_multivector() ||
        vol.degree() != p.chart().dim() || vol.terms().size() != 1)
        throw std::invalid_argument("divergence expects a volume form");
    if (p.degree() == 0) {
        return SkewField::multivector(p.chart(), 0);
    }
    const Chart& chart = p.chart();
    SkewField big = exterior_derivative(contract(p, vol));
    // Invert X -> contract(X, vol) on the basis, then apply the factor -2
    // that makes schouten(P, P) = divergence(P) ^ P exact (see README).
    SkewField out = SkewField::multivector(chart, p.degree() - 1);
    SkewField::Index cur;
    for_each_tuple(chart.dim(), p.degree() - 1, cur,
                   [&](const SkewField::Index& k) {
                       SkewField basis =
                           SkewField::multivector(chart, p.degree() - 1);
                       basis.add_term(k, Expr::integer(1));
                       SkewField image = contract(basis, vol);
                       // image has exactly one term: the complement of k.
                       const auto& [comp, den] = *image.terms().begin();
                       Expr num = big.coeff(comp);
                       if (num.is_zero_literal()) return;
                       Expr c = Expr::prod(
                           {Expr::integer(-2), Expr::div(num, den)});
                       out.add_term(k, std::move(c));
                   });
    return out;
}

SkewField mv_power(const SkewField& p, int k) {
    if (k < 0) throw std::invalid_argument("mv_power expects k >= 0");
    SkewField out(p.chart(), 0, p.variance());
    out.add_term({}, Expr::integer(1));
    for (int i = 0; i < k; ++i) out = wedge(out, p);
    return out;
}

FieldZero field_is_zero(const SkewField& f, const SampleConfig& cfg) {
    FieldZero out;
    out.verdict.kind = ZeroVerdict::ProvedZero;
    for (const auto& [idx, c] : f.terms()) {
        ZeroVerdict v = is_zero(c, f.chart(), cfg);
        if (v.kind == ZeroVerdict::NonZero) {
            out.verdict = v;
            out.component = idx;
            return out;
        }
        if (v.kind == ZeroVerdict::NumericallyZero) {
            if (out.verdict.kind == ZeroVerdict::ProvedZero)
                out.verdict.kind = ZeroVerdict::NumericallyZero;
            out.verdict.samples = std::max(out.verdict.samples, v.samples);
            out.verdict.max_residual =
                std::max(out.verdict.max_residual, v.max_residual);
        }
    }
    return out;
}

bool structurally_equal(const SkewField& a, const SkewField& b) {
    if (a.chart() != b.chart() || a.degree() != b.degree() ||
        a.variance() != b.variance())
        return false;
    SkewField pa = a, pb = b;
    pa.prune();
    pb.prune();
    if (pa.terms().size() != pb.terms().size()) return false;
    auto ita = pa.terms().begin();
    auto itb = pb.terms().begin();
    for (; ita != pa.terms().end(); ++ita, ++itb) {
        if (ita->first != itb->first) return false;
        if (!structurally_equal(ita->second, itb->second)) return false;
    }
    return true;
}

}  // namespace jtk
