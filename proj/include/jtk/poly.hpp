#pragma once

#include "jtk/expr.hpp"

#include <map>
#include <optional>

namespace jtk {

// Sparse multivariate polynomial over the rationals. Monomial keys map
// coordinate name -> positive exponent; the empty key is the constant term.
// Zero coefficients are never stored.
class Polynomial {
public:
    using Monomial = std::map<std::string, int>;

    static Polynomial zero() { return {}; }
    static Polynomial constant(Rational c);
    static Polynomial variable(const std::string& name);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial pow(long k) const;  // k >= 0

    Expr to_expr() const;  // canonical expanded form, graded-lex term order
    std::string str() const { return to_expr().str(); }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

private:
    std::map<Monomial, Rational> terms_;
};

// Expands e into a Polynomial when it is polynomial: no sin/cos/exp, no
// negative powers, and every Div denominator folds to a nonzero constant
// (after recursive normalization). Returns nullopt otherwise.
std::optional<Polynomial> normalize_polynomial(const Expr& e);

}  // namespace jtk
