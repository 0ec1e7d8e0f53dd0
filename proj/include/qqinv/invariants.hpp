#pragma once

// The quadratic invariants x_{iα} of the braided product, invariant
// subspaces per bidegree, the relations among x, t and tb, and the
// degreewise comparison of invariants with products of x's.

#include <string>
#include <vector>

#include "qqinv/actions.hpp"
#include "qqinv/graded.hpp"
#include "qqinv/linalg.hpp"
#include "qqinv/matexpr.hpp"

namespace qqinv {

/// A subspace of one component, in basis coordinates.
struct Subspace {
    int dt = 0, db = 0;
    int ambient = 0;
    std::vector<SparseVec<QScalar>> vectors;
    SparseRREF<QScalar> rref;

    int dim() const { return static_cast<int>(rref.rank()); }
    bool contains(const SparseVec<QScalar>& v) const { return rref.contains(v); }
};

class InvariantContext {
public:
    explicit InvariantContext(const GenSet& g, GradedOptions opt = {});

    const GenSet& gens() const { return g_; }
    ExactAlgebra& algebra() { return alg_; }
    const ActionTable& phi() const { return phi_; }

    /// Normal form of sum_p t_{ip} tb_{αp}, 1 <= i <= r, α in I_{s|s}.
    Elem x(int i, int al);
    /// sum E_{iα}⊗x_{iα}, rows 1..r, columns I_{s|s}.
    MatExpr X();
    /// The entries of T_+ Tb agree with x_{iα}.
    bool x_matches_matrix_product();
    bool x_invariant(int i, int al);

    /// Joint kernel of Φ(L_ab) - δ_ab over all a <= b.
    Subspace invariant_subspace(int dt, int db);
    /// Span of the normal forms of all products of d x's.
    Subspace x_span(int d);

private:
    GenSet g_;
    std::vector<Elem> rels_;
    ExactAlgebra alg_;
    ActionTable phi_;
};

struct FftEntry {
    int dt = 0, db = 0;
    double words = 0;
    double relation_rank = 0;
    int component_dim = 0;
    int invariant_dim = 0;
    /// -1 off the diagonal.
    int x_span_dim = -1;
    bool contained = true;
    bool ok = true;
};

struct FftReport {
    bool ok = true;
    std::vector<FftEntry> entries;
    std::string witness;
};

/// For d <= dmax the x-products span the invariants of bidegree (d,d);
/// invariants of bidegree (d1,d2), d1 != d2, d1 + d2 <= 2 dmax vanish.
FftReport fft_check(InvariantContext& ctx, int dmax);

struct XRelationResult {
    bool xt = false, xbart = false, xx = false;
    std::string witness;
    bool ok() const { return xt && xbart && xx; }
};

/// R X^1 T_+^2 = T_+^2 X^1, Tb^1 X^2 S = X^2 Tb^1 and R X^1 X^2 = X^2 X^1 (PSP),
/// each entry compared in normal form.
XRelationResult check_X_relations(InvariantContext& ctx);

}  // namespace qqinv
