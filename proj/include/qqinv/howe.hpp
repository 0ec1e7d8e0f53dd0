#pragma once

// The map from A_{r,s} (generators t_{iα}, 1 <= i <= r, α in I_{s|s}) into
// the braided product, and the operator Ω on A_{r,s}⊗A_{r,s} that controls
// how it treats products.

#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qqinv/graded.hpp"
#include "qqinv/invariants.hpp"
#include "qqinv/matexpr.hpp"

namespace qqinv {

/// Elements of A_{r,s}⊗A_{r,s}.
using PairElem = std::map<std::pair<Word, Word>, QScalar>;

void pair_add(PairElem& into, const Word& u, const Word& v, const QScalar& c);
std::string pair_to_string(const GenSet& g, const PairElem& x);

/// How the S factors follow the X product: S^{12}S^{13}..S^{1k}, or
/// S^{(1,2)}S^{(2,3)}..S^{(k-1,k)} with S^{(p,j)} = S^{1j}..S^{pj}.
enum class GenDeltaForm { FirstRow, Nested };

struct GenDeltaResult {
    bool ok = true;
    std::size_t entries = 0;
    std::string witness;
};

struct DescentResult {
    bool ok = true;
    std::size_t checked = 0;
    std::string witness;
};

struct InjectivityResult {
    int domain_dim = 0;
    int rank = 0;
    int invariant_dim = 0;
    bool images_invariant = true;
    bool ok() const { return rank == domain_dim && images_invariant; }
};

class HoweContext {
public:
    /// g describes the braided product; A_{r,s} is built alongside.
    explicit HoweContext(const GenSet& g, GradedOptions opt = {});

    const GenSet& gens() const { return inv_.gens(); }
    /// Generators t_{iα} of A_{r,s}, stored as GenSet(r, 0, s).
    const GenSet& small() const { return a_; }
    ExactAlgebra& small_algebra() { return a_alg_; }
    InvariantContext& invariants() { return inv_; }

    /// Normal form in the braided product of
    /// sum_b ± t_{i1 b1}..t_{ik bk} tb_{αk bk}..tb_{α1 b1}.
    Elem delta_tilde(const Word& w);
    Elem delta_tilde(const Elem& x);

    /// Ω(u⊗v), from the contraction S^{(p,k)}..S^{(p,p+1)} on column indices.
    PairElem omega(const Word& u, const Word& v);
    PairElem omega(const Elem& f, const Elem& g);

    /// Δ(fg) = mul∘(Δ⊗Δ)∘Ω(f⊗g) in normal form.
    bool check_delta_mul(const Word& f, const Word& g, std::string* witness = nullptr);
    /// All pairs of words of lengths (1,1), then `samples` seeded pairs of
    /// lengths (2,1).
    DescentResult check_delta_mul_suite(int samples, std::uint64_t seed);
    /// Entries of Δ(T^1..T^k) against X^1..X^k followed by the S factors.
    GenDeltaResult check_genDelta(int k, GenDeltaForm form = GenDeltaForm::Nested);
    /// Ω of relation contexts of bidegree (p, q) vanishes modulo relations on
    /// either side.
    DescentResult check_omega_descent(int p, int q);
    /// Δ maps relations of A_{r,s} to zero.
    DescentResult check_delta_descent(int d);
    InjectivityResult delta_injectivity(int d);

private:
    /// T^1..T^k S^{(p,k)}..S^{(p,p+1)} over A_{r,s}.
    const MatExpr& omega_matrix(int p, int k);

    GenSet a_;
    std::vector<Elem> a_rels_;
    ExactAlgebra a_alg_;
    InvariantContext inv_;
    std::map<std::pair<int, int>, MatExpr> omega_cache_;
    std::map<int, MatExpr> power_cache_;
};

}  // namespace qqinv
