#include "jtk/expr.hpp"

#include <functional>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace jtk {

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw std::invalid_argument("empty coordinate name");
        if (!seen.insert(n).second)
            throw std::invalid_argument("duplicate coordinate name: " + n);
    }
}

int Chart::index_of(const std::string& name) const {
    for (int i = 0; i < dim(); ++i)
        if (names_[i] == name) return i;
    return -1;
}

Expr::Expr() : Expr(constant(0)) {}

Expr Expr::make(detail::ExprNode n) {
    return Expr(std::make_shared<const detail::ExprNode>(std::move(n)));
}

Expr Expr::constant(Rational r) {
    detail::ExprNode n;
    n.kind = ExprKind::Const;
    n.value = std::move(r);
    return make(std::move(n));
}

Expr Expr::var(std::string name) {
    detail::ExprNode n;
    n.kind = ExprKind::Var;
    n.name = std::move(name);
    return make(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    Rational c = 0;
    for (auto& t : terms) {
        if (t.kind() == ExprKind::Sum) {
            for (const auto& k : t.kids()) {
                if (k.is_constant())
                    c += k.value();
                else
                    flat.push_back(k);
            }
        } else if (t.is_constant()) {
            c += t.value();
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (c != 0) flat.push_back(constant(c));
    if (flat.empty()) return constant(0);
    if (flat.size() == 1) return flat[0];
    detail::ExprNode n;
    n.kind = ExprKind::Sum;
    n.kids = std::move(flat);
    return make(std::move(n));
}

Expr Expr::prod(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    Rational c = 1;
    // Flattens nested products in factor order and folds sign/constant
    // factors into one leading coefficient.
    std::function<void(Expr)> absorb = [&](Expr f) {
        if (f.kind() == ExprKind::Neg) {
            c = -c;
            f = f.kids()[0];
        }
        if (f.kind() == ExprKind::Prod) {
            for (const auto& k : f.kids()) absorb(k);
        } else if (f.is_constant()) {
            c *= f.value();
        } else {
            flat.push_back(std::move(f));
        }
    };
    for (auto& f : factors) absorb(std::move(f));
    if (c == 0) return constant(0);
    if (flat.empty()) return constant(c);
    if (c != 1) flat.insert(flat.begin(), constant(c));
    if (flat.size() == 1) return flat[0];
    detail::ExprNode n;
    n.kind = ExprKind::Prod;
    n.kids = std::move(flat);
    return make(std::move(n));
}

Expr Expr::neg(Expr e) {
    if (e.is_constant()) return constant(-e.value());
    if (e.kind() == ExprKind::Neg) return e.kids()[0];
    if (e.kind() == ExprKind::Prod && e.kids()[0].is_constant()) {
        std::vector<Expr> kids = e.kids();
        kids[0] = constant(-kids[0].value());
        return prod(std::move(kids));
    }
    detail::ExprNode n;
    n.kind = ExprKind::Neg;
    n.kids = {std::move(e)};
    return make(std::move(n));
}

Expr Expr::pow(Expr base, long exponent) {
    if (exponent == 0) return constant(1);
    if (exponent == 1) return base;
    if (base.is_constant()) {
        const Rational& b = base.value();
        if (b == 0 && exponent < 0) throw DivisionNearZero();
        Rational r = 1;
        long k = exponent < 0 ? -exponent : exponent;
        for (long i = 0; i < k; ++i) r *= b;
        if (exponent < 0) r = 1 / r;
        return constant(r);
    }
    if (base.kind() == ExprKind::Pow) {
        long inner = base.exponent();
        return pow(base.kids()[0], inner * exponent);
    }
    detail::ExprNode n;
    n.kind = ExprKind::Pow;
    n.kids = {std::move(base)};
    n.exponent = exponent;
    return make(std::move(n));
}

Expr Expr::div(Expr num, Expr den) {
    if (den.is_constant()) {
        if (den.value() == 0) throw DivisionNearZero();
        return prod({constant(1 / den.value()), std::move(num)});
    }
    if (num.is_zero_literal()) return constant(0);
    detail::ExprNode n;
    n.kind = ExprKind::Div;
    n.kids = {std::move(num), std::move(den)};
    return make(std::move(n));
}

Expr Expr::sin(Expr e) {
    if (e.is_zero_literal()) return constant(0);
    detail::ExprNode n;
    n.kind = ExprKind::Sin;
    n.kids = {std::move(e)};
    return make(std::move(n));
}

Expr Expr::cos(Expr e) {
    if (e.is_zero_literal()) return constant(1);
    detail::ExprNode n;
    n.kind = ExprKind::Cos;
    n.kids = {std::move(e)};
    return make(std::move(n));
}

Expr Expr::exp(Expr e) {
    if (e.is_zero_literal()) return constant(1);
    detail::ExprNode n;
    n.kind = ExprKind::Exp;
    n.kids = {std::move(e)};
    return make(std::move(n));
}

Expr Expr::diff(const std::string& v) const {
    switch (kind()) {
        case ExprKind::Const:
            return constant(0);
        case ExprKind::Var:
            return constant(name() == v ? 1 : 0);
        case ExprKind::Sum: {
            std::vector<Expr> d;
            d.reserve(kids().size());
            for (const auto& k : kids()) d.push_back(k.diff(v));
            return sum(std::move(d));
        }
        case ExprKind::Prod: {
            std::vector<Expr> terms;
            for (std::size_t i = 0; i < kids().size(); ++i) {
                std::vector<Expr> factors = kids();
                factors[i] = kids()[i].diff(v);
                terms.push_back(prod(std::move(factors)));
            }
            return sum(std::move(terms));
        }
        case ExprKind::Neg:
            return neg(kids()[0].diff(v));
        case ExprKind::Pow:
            return prod({integer(exponent()), pow(kids()[0], exponent() - 1),
                         kids()[0].diff(v)});
        case ExprKind::Div: {
            const Expr& n = kids()[0];
            const Expr& d = kids()[1];
            return div(n.diff(v) * d - n * d.diff(v), pow(d, 2));
        }
        case ExprKind::Sin:
            return prod({cos(kids()[0]), kids()[0].diff(v)});
        case ExprKind::Cos:
            return neg(prod({sin(kids()[0]), kids()[0].diff(v)}));
        case ExprKind::Exp:
            return prod({*this, kids()[0].diff(v)});
    }
    throw std::logic_error("unreachable");
}

namespace {

double track(double x, Expr::EvalStats& stats) {
    double a = std::abs(x);
    if (a > stats.max_abs) stats.max_abs = a;
    return x;
}

double eval_rec(const Expr& e, const Point& p, Expr::EvalStats& stats) {
    switch (e.kind()) {
        case ExprKind::Const:
            return track(static_cast<double>(e.value()), stats);
        case ExprKind::Var: {
            auto it = p.find(e.name());
            if (it == p.end())
                throw std::out_of_range("no value for coordinate " + e.name());
            return track(it->second, stats);
        }
        case ExprKind::Sum: {
            double s = 0;
            for (const auto& k : e.kids()) s += eval_rec(k, p, stats);
            return track(s, stats);
        }
        case ExprKind::Prod: {
            double s = 1;
            for (const auto& k : e.kids()) s *= eval_rec(k, p, stats);
            return track(s, stats);
        }
        case ExprKind::Neg:
            return -eval_rec(e.kids()[0], p, stats);
        case ExprKind::Pow: {
            double b = eval_rec(e.kids()[0], p, stats);
            long k = e.exponent();
            if (k < 0) {
                double a = std::abs(b);
                if (a < stats.min_denominator) stats.min_denominator = a;
                if (a < 1e-300) throw DivisionNearZero();
            }
            double r = 1, base = k < 0 ? 1.0 / b : b;
            for (long i = 0, n = k < 0 ? -k : k; i < n; ++i) r *= base;
            return track(r, stats);
        }
        case ExprKind::Div: {
            double n = eval_rec(e.kids()[0], p, stats);
            double d = eval_rec(e.kids()[1], p, stats);
            double a = std::abs(d);
            if (a < stats.min_denominator) stats.min_denominator = a;
            if (a < 1e-300) throw DivisionNearZero();
            return track(n / d, stats);
        }
        case ExprKind::Sin:
            return track(std::sin(eval_rec(e.kids()[0], p, stats)), stats);
        case ExprKind::Cos:
            return track(std::cos(eval_rec(e.kids()[0], p, stats)), stats);
        case ExprKind::Exp:
            return track(std::exp(eval_rec(e.kids()[0], p, stats)), stats);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

double Expr::eval(const Point& point) const {
    EvalStats stats;
    return eval_rec(*this, point, stats);
}

double Expr::eval(const Point& point, EvalStats& stats) const {
    return eval_rec(*this, point, stats);
}

Expr Expr::substitute(const std::map<std::string, Expr>& repl) const {
    switch (kind()) {
        case ExprKind::Const:
            return *this;
        case ExprKind::Var: {
            auto it = repl.find(name());
            return it == repl.end() ? *this : it->second;
        }
        case ExprKind::Sum:
        case ExprKind::Prod: {
            std::vector<Expr> kids2;
            kids2.reserve(kids().size());
            for (const auto& k : kids()) kids2.push_back(k.substitute(repl));
            return kind() == ExprKind::Sum ? sum(std::move(kids2))
                                           : prod(std::move(kids2));
        }
        case ExprKind::Neg:
            return neg(kids()[0].substitute(repl));
        case ExprKind::Pow:
            return pow(kids()[0].substitute(repl), exponent());
        case ExprKind::Div:
            return div(kids()[0].substitute(repl), kids()[1].substitute(repl));
        case ExprKind::Sin:
            return sin(kids()[0].substitute(repl));
        case ExprKind::Cos:
            return cos(kids()[0].substitute(repl));
        case ExprKind::Exp:
            return exp(kids()[0].substitute(repl));
    }
    throw std::logic_error("unreachable");
}

namespace {
void collect_vars(const Expr& e, std::set<std::string>& out) {
    if (e.kind() == ExprKind::Var) out.insert(e.name());
    for (const auto& k : e.kids()) collect_vars(k, out);
}
}  // namespace

std::vector<std::string> Expr::variables() const {
    std::set<std::string> s;
    collect_vars(*this, s);
    return {s.begin(), s.end()};
}

bool Expr::depends_on(const std::string& v) const {
    if (kind() == ExprKind::Var) return name() == v;
    for (const auto& k : kids())
        if (k.depends_on(v)) return true;
    return false;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case ExprKind::Const:
            return a.value() == b.value();
        case ExprKind::Var:
            return a.name() == b.name();
        case ExprKind::Pow:
            if (a.exponent() != b.exponent()) return false;
            break;
        default:
            break;
    }
    if (a.kids().size() != b.kids().size()) return false;
    for (std::size_t i = 0; i < a.kids().size(); ++i)
        if (!structurally_equal(a.kids()[i], b.kids()[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Printing. Precedence levels: sum 0 < neg 1 < prod/div 2 < pow 3 < atom 4.
// The printer emits text that parses back to the same tree.

namespace {

int precedence(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::Sum:
            return 0;
        case ExprKind::Neg:
            return 1;
        case ExprKind::Const:
            return e.value() < 0 ? 1 : 4;
        case ExprKind::Prod:
        case ExprKind::Div:
            return 2;
        case ExprKind::Pow:
            return 3;
        default:
            return 4;
    }
}

void print_rec(const Expr& e, int min_prec, std::ostream& os) {
    bool parens = precedence(e) < min_prec;
    if (parens) os << '(';
    switch (e.kind()) {
        case ExprKind::Const: {
            os << e.value().str();
            break;
        }
        case ExprKind::Var:
            os << e.name();
            break;
        case ExprKind::Sum: {
            for (std::size_t i = 0; i < e.kids().size(); ++i) {
                const Expr& k = e.kids()[i];
                bool negative = k.kind() == ExprKind::Neg ||
                                (k.is_constant() && k.value() < 0) ||
                                (k.kind() == ExprKind::Prod &&
                                 k.kids()[0].is_constant() &&
                                 k.kids()[0].value() < 0);
                if (i == 0) {
                    print_rec(k, 1, os);
                } else if (negative) {
                    os << " - ";
                    Expr pos = Expr::neg(k);
                    print_rec(pos, 1, os);
                } else {
                    os << " + ";
                    print_rec(k, 1, os);
                }
            }
            break;
        }
        case ExprKind::Neg:
            os << '-';
            print_rec(e.kids()[0], 3, os);
            break;
        case ExprKind::Prod:
            for (std::size_t i = 0; i < e.kids().size(); ++i) {
                if (i) os << '*';
                print_rec(e.kids()[i], i ? 3 : 2, os);
            }
            break;
        case ExprKind::Div:
            print_rec(e.kids()[0], 2, os);
            os << " / ";
            print_rec(e.kids()[1], 3, os);
            break;
        case ExprKind::Pow:
            print_rec(e.kids()[0], 4, os);
            os << '^' << e.exponent();
            break;
        case ExprKind::Sin:
            os << "sin(";
            print_rec(e.kids()[0], 0, os);
            os << ')';
            break;
        case ExprKind::Cos:
            os << "cos(";
            print_rec(e.kids()[0], 0, os);
            os << ')';
            break;
        case ExprKind::Exp:
            os << "exp(";
            print_rec(e.kids()[0], 0, os);
            os << ')';
            break;
    }
    if (parens) os << ')';
}

}  // namespace

std::string Expr::str() const {
    std::ostringstream os;
    print_rec(*this, 0, os);
    return os.str();
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.

namespace {

class Parser {
public:
    Parser(const std::string& text, const Chart& chart)
        : text_(text), chart_(chart) {}

    Expr run() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            throw SyntaxError("unexpected trailing input", pos_);
        return e;
    }

private:
    const std::string& text_;
    const Chart& chart_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Expr parse_sum() {
        std::vector<Expr> terms{parse_term()};
        for (;;) {
            if (eat('+')) {
                terms.push_back(parse_term());
            } else if (eat('-')) {
                terms.push_back(Expr::neg(parse_term()));
            } else {
                break;
            }
        }
        return Expr::sum(std::move(terms));
    }

    Expr parse_term() {
        Expr e = parse_factor();
        for (;;) {
            if (eat('*')) {
                e = Expr::prod({e, parse_factor()});
            } else if (eat('/')) {
                e = Expr::div(e, parse_factor());
            } else {
                break;
            }
        }
        return e;
    }

    Expr parse_factor() {
        Expr base = parse_base();
        if (eat('^')) return Expr::pow(std::move(base), parse_int());
        return base;
    }

    long parse_int() {
        skip_ws();
        std::size_t start = pos_;
        bool negative = eat('-');
        skip_ws();
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == digits) throw SyntaxError("expected integer exponent", start);
        long v = std::stol(text_.substr(digits, pos_ - digits));
        return negative ? -v : v;
    }

    Expr parse_base() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            if (!eat(')')) throw SyntaxError("expected ')'", pos_);
            return e;
        }
        if (c == '-') {
            ++pos_;
            return Expr::neg(parse_factor());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string ident = text_.substr(start, pos_ - start);
            if (ident == "sin" || ident == "cos" || ident == "exp") {
                if (!eat('(')) throw SyntaxError("expected '(' after " + ident, pos_);
                Expr arg = parse_sum();
                if (!eat(')')) throw SyntaxError("expected ')'", pos_);
                if (ident == "sin") return Expr::sin(std::move(arg));
                if (ident == "cos") return Expr::cos(std::move(arg));
                return Expr::exp(std::move(arg));
            }
            if (!chart_.has(ident)) throw UnknownIdentifier(ident);
            return Expr::var(ident);
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    Expr parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        boost::multiprecision::cpp_int numerator(text_.substr(start, pos_ - start));
        boost::multiprecision::cpp_int denominator = 1;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            std::size_t frac = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == frac) throw SyntaxError("expected digits after '.'", pos_);
            for (std::size_t i = frac; i < pos_; ++i) {
                numerator = numerator * 10 + (text_[i] - '0');
                denominator *= 10;
            }
        }
        return Expr::constant(Rational(numerator, denominator));
    }
};

}  // namespace

Expr parse_expr(const std::string& text, const Chart& chart) {
    return Parser(text, chart).run();
}

}  // namespace jtk
