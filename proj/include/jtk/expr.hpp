#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace jtk {

using Rational = boost::multiprecision::cpp_rational;

// Ordered list of distinct coordinate names.
class Chart {
public:
    explicit Chart(std::vector<std::string> names);

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_.at(i); }
    int index_of(const std::string& name) const;  // -1 if absent
    bool has(const std::string& name) const { return index_of(name) >= 0; }

    bool operator==(const Chart& o) const { return names_ == o.names_; }
    bool operator!=(const Chart& o) const { return names_ != o.names_; }

private:
    std::vector<std::string> names_;
};

struct SyntaxError : std::runtime_error {
    std::size_t position;
    SyntaxError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct UnknownIdentifier : std::runtime_error {
    std::string name;
    explicit UnknownIdentifier(const std::string& n)
        : std::runtime_error("unknown identifier: " + n), name(n) {}
};

struct DivisionNearZero : std::runtime_error {
    DivisionNearZero() : std::runtime_error("division by near-zero denominator") {}
};

enum class ExprKind { Const, Var, Sum, Prod, Neg, Pow, Div, Sin, Cos, Exp };

class Expr;
using Point = std::map<std::string, double>;

namespace detail {
struct ExprNode {
    ExprKind kind;
    Rational value;           // Const
    std::string name;         // Var
    std::vector<Expr> kids;   // Sum/Prod/Neg/Div/Sin/Cos/Exp/Pow(base)
    long exponent = 0;        // Pow
};
}  // namespace detail

// Immutable expression tree with exact rational constants.
class Expr {
public:
    Expr();  // zero

    static Expr constant(Rational r);
    static Expr integer(long n) { return constant(Rational(n)); }
    static Expr rational(long num, long den) { return constant(Rational(num, den)); }
    static Expr var(std::string name);
    static Expr sum(std::vector<Expr> terms);
    static Expr prod(std::vector<Expr> factors);
    static Expr neg(Expr e);
    static Expr pow(Expr base, long exponent);
    static Expr div(Expr num, Expr den);
    static Expr sin(Expr e);
    static Expr cos(Expr e);
    static Expr exp(Expr e);

    ExprKind kind() const { return node_->kind; }
    const Rational& value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    const std::vector<Expr>& kids() const { return node_->kids; }
    long exponent() const { return node_->exponent; }

    bool is_constant() const { return kind() == ExprKind::Const; }
    bool is_zero_literal() const { return is_constant() && value() == 0; }
    bool is_one_literal() const { return is_constant() && value() == 1; }

    Expr diff(const std::string& v) const;
    double eval(const Point& point) const;

    // Evaluation statistics for relative-tolerance zero testing and for
    // detecting samples that land too close to a pole.
    struct EvalStats {
        double max_abs = 0.0;       // largest |intermediate value|
        double min_denominator = std::numeric_limits<double>::infinity();
    };
    double eval(const Point& point, EvalStats& stats) const;
    Expr substitute(const std::map<std::string, Expr>& repl) const;

    // Free variables, sorted.
    std::vector<std::string> variables() const;
    bool depends_on(const std::string& v) const;

    std::string str() const;

    friend Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
    friend Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Expr::neg(b)}); }
    friend Expr operator*(const Expr& a, const Expr& b) { return Expr::prod({a, b}); }
    friend Expr operator/(const Expr& a, const Expr& b) { return Expr::div(a, b); }
    friend Expr operator-(const Expr& a) { return Expr::neg(a); }

private:
    explicit Expr(std::shared_ptr<const detail::ExprNode> n) : node_(std::move(n)) {}
    static Expr make(detail::ExprNode n);
    std::shared_ptr<const detail::ExprNode> node_;
};

// Structural equality (same tree after smart-constructor normalization).
bool structurally_equal(const Expr& a, const Expr& b);

// Parses per the grammar: expr := term (('+'|'-') term)*; term := factor
// (('*'|'/') factor)*; factor := base ('^' integer)?; base := number | ident |
// '(' expr ')' | ('sin'|'cos'|'exp') '(' expr ')' | '-' factor.
// Every identifier must be a chart coordinate.
Expr parse_expr(const std::string& text, const Chart& chart);

}  // namespace jtk
