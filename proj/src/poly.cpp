#include "jtk/poly.hpp"

#include <algorithm>

namespace jtk {

Polynomial Polynomial::constant(Rational c) {
    Polynomial p;
    p.add_term({}, c);
    return p;
}

Polynomial Polynomial::variable(const std::string& name) {
    Polynomial p;
    p.add_term({{name, 1}}, 1);
    return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m = ma;
            for (const auto& [v, e] : mb) m[v] += e;
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::pow(long k) const {
    Polynomial r = constant(1);
    for (long i = 0; i < k; ++i) r = r * *this;
    return r;
}

Expr Polynomial::to_expr() const {
    // Graded-lex order: total degree descending, then lexicographic on the
    // exponent maps, for a deterministic canonical printout.
    std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
    auto total = [](const Monomial& m) {
        int d = 0;
        for (const auto& [v, e] : m) d += e;
        return d;
    };
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](const auto& a, const auto& b) {
                         int da = total(a.first), db = total(b.first);
                         if (da != db) return da > db;
                         return a.first < b.first;
                     });
    std::vector<Expr> terms;
    for (const auto& [m, c] : sorted) {
        std::vector<Expr> factors{Expr::constant(c)};
        for (const auto& [v, e] : m) factors.push_back(Expr::pow(Expr::var(v), e));
        terms.push_back(Expr::prod(std::move(factors)));
    }
    return Expr::sum(std::move(terms));
}

std::optional<Polynomial> normalize_polynomial(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::Const:
            return Polynomial::constant(e.value());
        case ExprKind::Var:
            return Polynomial::variable(e.name());
        case ExprKind::Sum: {
            Polynomial r;
            for (const auto& k : e.kids()) {
                auto p = normalize_polynomial(k);
                if (!p) return std::nullopt;
                r = r + *p;
            }
            return r;
        }
        case ExprKind::Prod: {
            Polynomial r = Polynomial::constant(1);
            for (const auto& k : e.kids()) {
                auto p = normalize_polynomial(k);
                if (!p) return std::nullopt;
                r = r * *p;
            }
            return r;
        }
        case ExprKind::Neg: {
            auto p = normalize_polynomial(e.kids()[0]);
            if (!p) return std::nullopt;
            return Polynomial::zero() - *p;
        }
        case ExprKind::Pow: {
            auto p = normalize_polynomial(e.kids()[0]);
            if (!p) return std::nullopt;
            long k = e.exponent();
            if (k >= 0) return p->pow(k);
            // Negative power is polynomial only over a constant base.
            if (p->terms().size() == 1 && p->terms().begin()->first.empty()) {
                Rational base = p->terms().begin()->second;
                Rational r = 1;
                for (long i = 0; i < -k; ++i) r *= base;
                return Polynomial::constant(1 / r);
            }
            return std::nullopt;
        }
        case ExprKind::Div: {
            auto n = normalize_polynomial(e.kids()[0]);
            auto d = normalize_polynomial(e.kids()[1]);
            if (!n || !d) return std::nullopt;
            if (d->terms().size() == 1 && d->terms().begin()->first.empty())
                return *n * Polynomial::constant(1 / d->terms().begin()->second);
            return std::nullopt;
        }
        case ExprKind::Sin:
        case ExprKind::Cos:
        case ExprKind::Exp: {
            // A transcendental of a constant-zero argument folds away in the
            // smart constructors; anything surviving here is non-polynomial
            // unless the argument itself normalizes to the zero polynomial.
            auto p = normalize_polynomial(e.kids()[0]);
            if (p && p->is_zero()) {
                if (e.kind() == ExprKind::Sin) return Polynomial::zero();
                return Polynomial::constant(1);
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace jtk
