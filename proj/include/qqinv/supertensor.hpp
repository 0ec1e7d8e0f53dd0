#pragma once

// Parity-graded index sets and sparse operators on tensor products of
// matrix spaces, with the Koszul sign rule for products.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qqinv/qfield.hpp"

namespace qqinv {

/// Parity of a signed index: odd exactly when negative.
inline int parity(int i) { return i < 0 ? 1 : 0; }

/// Index range of one tensor factor. Full is {-n..-1, 1..n}; Positive is
/// {1..n} (an (n|0) space); Negative is {-n..-1}.
struct Space {
    enum class Kind { Full, Positive, Negative };
    int n = 0;
    Kind kind = Kind::Full;

    static Space full(int n) { return {n, Kind::Full}; }
    static Space positive(int n) { return {n, Kind::Positive}; }
    static Space negative(int n) { return {n, Kind::Negative}; }

    /// Indices in increasing order.
    std::vector<int> indices() const;
    bool contains(int i) const;
    int size() const { return kind == Kind::Full ? 2 * n : n; }
    std::string to_string() const;
    friend bool operator==(const Space& a, const Space& b) { return a.n == b.n && a.kind == b.kind; }
    friend bool operator!=(const Space& a, const Space& b) { return !(a == b); }
};

/// Row and column space of one tensor factor.
struct FactorDims {
    Space row;
    Space col;
    friend bool operator==(const FactorDims& a, const FactorDims& b) { return a.row == b.row && a.col == b.col; }
    friend bool operator!=(const FactorDims& a, const FactorDims& b) { return !(a == b); }
};

class DimensionMismatch : public std::invalid_argument {
public:
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Flattened (row_1, col_1, ..., row_k, col_k).
using MultiIndex = std::vector<int>;

/// Parity of an elementary tensor E_{r1 c1} x ... x E_{rk ck}.
int term_parity(const MultiIndex& key);

/// Sparse operator on a k-fold tensor product of matrix spaces.
class SuperOp {
public:
    SuperOp() = default;
    explicit SuperOp(std::vector<FactorDims> dims) : dims_(std::move(dims)) {}

    static SuperOp identity(const std::vector<Space>& spaces);
    static SuperOp identity(const Space& s) { return identity(std::vector<Space>{s}); }

    int arity() const { return static_cast<int>(dims_.size()); }
    const std::vector<FactorDims>& dims() const { return dims_; }
    const std::map<MultiIndex, QScalar>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    /// Adds c to the coefficient of the given elementary tensor.
    void add(const MultiIndex& key, const QScalar& c);
    QScalar coeff(const MultiIndex& key) const;

    /// 0 or 1 when all terms share a parity, -1 for mixed parity.
    int parity() const;
    bool is_even() const { return parity() == 0; }

    SuperOp scaled(const QScalar& c) const;
    friend SuperOp operator+(const SuperOp& a, const SuperOp& b);
    friend SuperOp operator-(const SuperOp& a, const SuperOp& b);
    friend bool operator==(const SuperOp& a, const SuperOp& b) { return a.dims_ == b.dims_ && a.terms_ == b.terms_; }

    /// One line per term, "coeff · E_{r,c}⊗...", ordered by multi-index.
    std::string dump() const;

private:
    std::vector<FactorDims> dims_;
    std::map<MultiIndex, QScalar> terms_;
};

/// Product with the Koszul rule
/// (A1⊗...⊗Ak)(B1⊗...⊗Bk) = (-1)^{sum_{l<m} |A_m||B_l|} A1B1⊗...⊗AkBk.
SuperOp op_mul(const SuperOp& a, const SuperOp& b);
inline SuperOp operator*(const SuperOp& a, const SuperOp& b) { return op_mul(a, b); }

/// Places the factors of a at the given 1-based increasing positions of a
/// k-fold product; the remaining factors are identities on the given spaces
/// (entries of `spaces` at the positions of a are ignored).
SuperOp embed(const SuperOp& a, const std::vector<int>& positions, const std::vector<Space>& spaces);

/// Terms whose indices lie in the given per-factor ranges, re-labelled to
/// those ranges.
SuperOp restrict_to(const SuperOp& a, const std::vector<FactorDims>& dims);

// Named operators. Index sets are Full(n) unless stated.
SuperOp build_S(int n);
SuperOp build_S_inverse(int n);
/// Positive-index block of S on (r|0)⊗(r|0).
SuperOp build_R(int r);
/// Negative-index block of S' = (1⊗J)S(1⊗J) on the Negative(r) spaces.
SuperOp build_R_prime(int r);
/// Signed permutation sum (-1)^{|a|} E_{ba}⊗E_{ab}.
SuperOp build_P(int m);
/// Odd operator sum (-1)^{|a|} E_{-a,a}; squares to minus the identity.
SuperOp build_J(int n);
/// Diagonal q^{2(-1)^{|a|} a} E_{aa}.
SuperOp build_D(int s);
SuperOp build_D_inverse(int s);
/// (1⊗D) S (1⊗D^{-1}).
SuperOp build_S_tilde(int s);
/// (1⊗J) S (1⊗J).
SuperOp build_S_prime(int n);
SuperOp build_S_prime_inverse(int n);

/// S^{12} S^{13} S^{23} == S^{23} S^{13} S^{12}.
bool check_qybe(const SuperOp& s);

/// "E_{r,c}" with signed indices.
std::string unit_name(int r, int c);

}  // namespace qqinv
