#pragma once

#include "jtk/expr.hpp"
#include "jtk/zero.hpp"

#include <functional>
#include <map>
#include <vector>

namespace jtk {

// Skew-symmetric coefficient field on a chart: either a multivector field
// (coefficients of wedge products of coordinate derivations) or a
// differential form (coefficients of wedge products of coordinate
// differentials). Terms are stored on strictly increasing index tuples; the
// degree-0 case stores a single coefficient on the empty tuple.
class SkewField {
public:
    enum class Variance { Multivector, Form };
    using Index = std::vector<int>;

    SkewField(Chart chart, int degree, Variance variance);
    static SkewField multivector(Chart chart, int degree) {
        return SkewField(std::move(chart), degree, Variance::Multivector);
    }
    static SkewField form(Chart chart, int degree) {
        return SkewField(std::move(chart), degree, Variance::Form);
    }

    const Chart& chart() const { return chart_; }
    int degree() const { return degree_; }
    Variance variance() const { return variance_; }
    bool is_multivector() const { return variance_ == Variance::Multivector; }

    // Accumulates coeff on the (possibly unsorted) tuple idx: repeated
    // indices annihilate the term, sorting contributes the permutation sign.
    void add_term(Index idx, Expr coeff);
    // Coefficient on a strictly increasing tuple (zero if absent).
    Expr coeff(const Index& idx) const;
    const std::map<Index, Expr>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    // Drops coefficients whose exact polynomial normal form is zero.
    // Non-polynomial coefficients are kept as-is.
    void prune();

    SkewField mapped(const std::function<Expr(const Expr&)>& f) const;

    // Lines "( x y ) = coeff", one term per line in index order; matches the
    // structure-file grammar.
    std::string str() const;

private:
    Chart chart_;
    int degree_;
    Variance variance_;
    std::map<Index, Expr> terms_;
};

SkewField add(const SkewField& a, const SkewField& b);
SkewField sub(const SkewField& a, const SkewField& b);
SkewField scale(const Expr& s, const SkewField& a);

// Wedge product of two fields of the same variance; degrees add.
SkewField wedge(const SkewField& a, const SkewField& b);

// Schouten bracket of multivector fields, in the odd-symplectic (antibracket)
// normalization: it extends the Lie bracket of vector fields, has degree
// p + q - 1, and satisfies the graded symmetry
//   schouten(P, Q) = -(-1)^{(p-1)(q-1)} schouten(Q, P)
// together with the graded Jacobi identity.
SkewField schouten(const SkewField& p, const SkewField& q);

// Exterior derivative of a form.
SkewField exterior_derivative(const SkewField& omega);

// Interior product i_P omega for a degree-p multivector P and a degree-q
// form omega (q >= p); the factors of P are inserted left to right.
SkewField contract(const SkewField& p, const SkewField& omega);

// Lie derivative along a vector field X: Schouten bracket on multivectors,
// Cartan formula i_X d + d i_X on forms.
SkewField lie_derivative(const SkewField& x, const SkewField& p);

// Divergence of a degree-p multivector with respect to a volume form,
// normalized so that for the standard volume it is twice the solution X of
// contract(X, vol) = d(contract(P, vol)). With this scaling
// schouten(P, P) = divergence(P) ^ P holds for every Poisson-calibration
// test bivector; see README for the convention discussion.
SkewField divergence(const SkewField& p, const SkewField& vol);

// Standard volume form dx_1 ^ ... ^ dx_n with unit coefficient.
SkewField standard_volume(const Chart& chart);

// k-fold wedge power (k >= 0; k = 0 gives the constant function 1).
SkewField mv_power(const SkewField& p, int k);

// Zero test applied coefficient-wise. component identifies the offending
// index tuple when the verdict is NonZero.
struct FieldZero {
    ZeroVerdict verdict;
    SkewField::Index component;
};
FieldZero field_is_zero(const SkewField& f, const SampleConfig& cfg = {});

// Coefficient-wise structural equality after pruning (exact; no sampling).
bool structurally_equal(const SkewField& a, const SkewField& b);

}  // namespace jtk
