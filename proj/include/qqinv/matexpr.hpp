#pragma once

// Matrices whose entries are words in the generators: sums of
// E_{r1 c1}⊗...⊗E_{rk ck}⊗w with the algebra slot last.

#include <map>
#include <vector>

#include "qqinv/supertensor.hpp"
#include "qqinv/words.hpp"

namespace qqinv {

class MatExpr {
public:
    MatExpr() = default;
    MatExpr(GenSet g, std::vector<FactorDims> dims) : g_(g), dims_(std::move(dims)) {}

    /// Scalar operator with every entry a multiple of the empty word.
    static MatExpr scalar(const GenSet& g, const SuperOp& op);

    const GenSet& gens() const { return g_; }
    int arity() const { return static_cast<int>(dims_.size()); }
    const std::vector<FactorDims>& dims() const { return dims_; }
    const std::map<MultiIndex, Elem>& terms() const { return terms_; }

    void add(const MultiIndex& key, const Word& w, const QScalar& c);
    void add(const MultiIndex& key, const Elem& x);
    Elem entry(const MultiIndex& key) const;

    MatExpr scaled(const QScalar& c) const;
    friend MatExpr operator-(const MatExpr& a, const MatExpr& b);
    friend MatExpr operator+(const MatExpr& a, const MatExpr& b);

private:
    GenSet g_;
    std::vector<FactorDims> dims_;
    std::map<MultiIndex, Elem> terms_;
};

/// Product with (A⊗f)(B⊗h) = (-1)^{sum_{l<m}|A_m||B_l| + |f||B|} AB⊗fh.
MatExpr mat_mul(const MatExpr& a, const MatExpr& b);
inline MatExpr operator*(const MatExpr& a, const MatExpr& b) { return mat_mul(a, b); }

/// Places the factors of a at 1-based increasing positions; other factors
/// are identities on fill[m].
MatExpr mat_embed(const MatExpr& a, const std::vector<int>& positions, const std::vector<Space>& fill);

/// sum E_{ia}⊗t_{ia} over i in rows (signed rows are folded), a in I_{n|n}.
MatExpr gen_T(const GenSet& g, const Space& rows);
/// sum (-1)^{|b|(|al|+|b|)} E_{b al}⊗tb_{al b}, b in I_{n|n}, al in I_{s|s}.
MatExpr gen_Tbar(const GenSet& g);

/// Nonzero entries (in key order).
std::vector<Elem> mat_entries(const MatExpr& m);

}  // namespace qqinv
