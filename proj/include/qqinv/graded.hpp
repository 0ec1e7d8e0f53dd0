#pragma once

// Bigraded quotients of the free algebra on a GenSet by homogeneous
// quadratic relations: bases, normal forms and products, degree by degree.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qqinv/linalg.hpp"
#include "qqinv/words.hpp"

namespace qqinv {

template <class F>
using ElemT = std::map<Word, F>;

class ResourceGuard : public std::runtime_error {
public:
    ResourceGuard(int dt, int db, double words)
        : std::runtime_error("component (" + std::to_string(dt) + "," + std::to_string(db) + ") has " +
                             std::to_string(static_cast<long long>(words)) + " words, above the configured ceiling"),
          dt(dt), db(db), words(words) {}
    int dt, db;
    double words;
};

struct GradedOptions {
    double max_words = 2e5;
    /// Empty disables the on-disk cache.
    std::string cache_dir;
};

/// One bidegree of the quotient. The spanning set `cols` is {b·g} for
/// generators g and basis words b one degree lower; the relation rows live
/// on it, and the basis is the set of non-pivot columns.
template <class F>
struct Component {
    int dt = 0, db = 0;
    double words = 0;
    std::vector<Word> cols;
    std::unordered_map<Word, int> col_of;
    SparseRREF<F> rref;
    std::vector<int> col_to_basis;
    std::vector<Word> basis;
    std::unordered_map<Word, int> basis_of;

    int dim() const { return static_cast<int>(basis.size()); }
    /// Rank of the relation span inside the space of all words.
    double relation_rank() const { return words - dim(); }
};

template <class F>
class GradedAlgebra {
public:
    using Convert = std::function<F(const QScalar&)>;

    /// `tag` names the coefficient domain in cache keys (e.g. "exact").
    GradedAlgebra(GenSet g, const std::vector<Elem>& relations, Convert convert, std::string tag,
                  GradedOptions opt = {});

    const GenSet& gens() const { return g_; }
    const Component<F>& component(int dt, int db);
    int dim(int dt, int db) { return component(dt, db).dim(); }

    /// Coordinates of a word over the basis of its component.
    const SparseVec<F>& nf_word(const Word& w);
    ElemT<F> normal_form(const ElemT<F>& x);
    ElemT<F> multiply(const ElemT<F>& x, const ElemT<F>& y);
    /// Normal form built only from the components (d,0), (0,d) and (1,1):
    /// barred generators are moved to the right through the (1,1) rule, then
    /// each block is reduced separately. Equal to zero exactly when x is,
    /// provided the algebra is the tensor product of its two halves as a
    /// vector space.
    ElemT<F> split_normal_form(const ElemT<F>& x);
    ElemT<F> split_multiply(const ElemT<F>& x, const ElemT<F>& y);
    /// Coordinates of a homogeneous element of bidegree (dt, db).
    SparseVec<F> coords(int dt, int db, const ElemT<F>& x);
    ElemT<F> from_coords(int dt, int db, const SparseVec<F>& v);

    F convert(const QScalar& c) const { return convert_(c); }
    /// Identifies the relation set; part of cache keys.
    std::uint64_t fingerprint() const { return fingerprint_; }
    std::size_t cache_hits() const { return cache_hits_; }

private:
    struct Slot {
        std::unique_ptr<Component<F>> comp;
        std::unordered_map<Word, SparseVec<F>> memo;
    };

    Slot& slot(int dt, int db);
    void build(int dt, int db, Component<F>& c);
    /// w' g with w' reduced one degree lower, in column coordinates of c.
    SparseVec<F> reduce_last(const Component<F>& c, const Word& w);
    bool load(Component<F>& c) const;
    void store(const Component<F>& c) const;
    std::string cache_path(int dt, int db) const;

    GenSet g_;
    Convert convert_;
    std::string tag_;
    GradedOptions opt_;
    std::map<std::pair<int, int>, std::vector<ElemT<F>>> quad_;
    std::map<std::pair<int, int>, Slot> slots_;
    std::unordered_map<Word, ElemT<F>> sorted_memo_;
    std::uint64_t fingerprint_ = 0;
    std::size_t cache_hits_ = 0;
};

extern template class GradedAlgebra<QScalar>;
extern template class GradedAlgebra<ModScalar>;

using ExactAlgebra = GradedAlgebra<QScalar>;

/// Exact algebra over Q(q).
ExactAlgebra make_exact(const GenSet& g, const std::vector<Elem>& relations, GradedOptions opt = {});
/// Image at q = q0 modulo p.
GradedAlgebra<ModScalar> make_modular(const GenSet& g, const std::vector<Elem>& relations, std::uint64_t p,
                                      std::uint64_t q0, GradedOptions opt = {});

enum class Mode { Exact, Modular };

/// Dimensions of all components with dt <= dt_max, db <= db_max and
/// dt + db <= d_max.
struct DimsTable {
    std::map<std::pair<int, int>, int> dims;
    std::map<std::pair<int, int>, double> words;
    /// "exact", "modular", or "modular->exact" after a disagreement.
    std::string method;
};

DimsTable dims_table(const GenSet& g, const std::vector<Elem>& relations, int d_max, Mode mode,
                     std::uint64_t seed = 1, GradedOptions opt = {});

/// Super-symmetric dimension sum_k C(m,k) C(m+d-k-1, d-k) with m = rn.
long long classical_dim(int r, int n, int d);

/// Cache directory from the environment variable QQINV_CACHE_DIR, or "".
std::string cache_dir_from_env();

}  // namespace qqinv
