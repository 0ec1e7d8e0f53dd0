#pragma once

// The U_q(q_n) action on both generator kinds, the U_q(q_r) action on the
// t's and the U_q(q_s) action on the barred generators, read off from
// matrix identities and extended to words through the coproduct.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qqinv/graded.hpp"
#include "qqinv/matexpr.hpp"
#include "qqinv/supertensor.hpp"
#include "qqinv/words.hpp"

namespace qqinv {

enum class Family { Phi, Psi, PsiBar };

std::string family_name(Family f);

/// L_{ab} with a <= b.
struct LieGen {
    int a = 0, b = 0;
    int parity() const { return qqinv::parity(a) ^ qqinv::parity(b); }
    friend bool operator==(const LieGen& x, const LieGen& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator<(const LieGen& x, const LieGen& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; }
};

class ActionTable {
public:
    /// `cop` selects the opposite coproduct; by default it is used for Psi
    /// and PsiBar.
    ActionTable(Family f, const GenSet& g, std::optional<bool> cop = std::nullopt);

    Family family() const { return family_; }
    const GenSet& gens() const { return g_; }
    /// Index range of the acting generators (n, r or s).
    int rank() const { return N_; }
    bool uses_cop() const { return cop_; }
    std::vector<LieGen> generators() const;

    /// Degree-one image of a generator; counit on generators the family does
    /// not act on.
    Elem image(const LieGen& L, char id) const;
    Elem act_word(const LieGen& L, const Word& w) const;
    Elem act(const LieGen& L, const Elem& x) const;

private:
    void extract_right(const MatExpr& G, const SuperOp& M);
    void extract_left(const MatExpr& G, const SuperOp& M);
    void record(const LieGen& L, char id, const Elem& img);
    bool acts_on(char id) const;

    Family family_;
    GenSet g_;
    int N_ = 0;
    bool cop_ = false;
    std::map<LieGen, std::map<char, Elem>> table_;
};

/// Columns (one per basis word) of the operator in component coordinates.
std::vector<SparseVec<QScalar>> operator_matrix(ExactAlgebra& alg, const ActionTable& t, const LieGen& L, int dt,
                                                int db);

struct InvarianceResult {
    bool ok = true;
    std::size_t checked = 0;
    /// Offending input and its nonzero normal-formed image.
    std::string witness;
};

/// For every generator L and every relation in every word context of total
/// bidegree (dt, db): the image of the context reduces to zero.
InvarianceResult check_relation_invariance(ExactAlgebra& alg, const ActionTable& t, const std::vector<Elem>& rels,
                                           int dt, int db);

struct DefectResult {
    bool ok = false;
    bool nonzero = false;
    /// Sign convention for 1⊗Psi with the fewest mismatches: "koszul" or
    /// "plain".
    std::string convention;
    std::size_t mismatches = 0;
    /// Whether every case matches once the δ_ab branch carries an extra
    /// (-1)^{|a|}.
    bool matches_with_diagonal_sign = false;
    /// True when Psi on generators is xi times (-1)^{|a|} δ_jk t_{-i,-a}.
    bool psi_scaled_by_xi = false;
    std::size_t cases = 0;
    std::string witness;
};

/// Compares the commutator of Psi_{L_ij} (i < 0 < j) with the braiding on
/// tb ⊗ t against the closed form
/// (-1)^{|a|(|α|+|b|)} ξ² δ_jk Σ_p t_{-i,-p} ⊗ (δ_{a,-b} tb_{α,-p} + δ_ab (-1)^{|p|} tb_{αp}).
DefectResult check_psi_defect(int r, int s, int n);

}  // namespace qqinv
