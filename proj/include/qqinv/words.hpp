#pragma once

// Folded generator sets, words, and linear combinations of words.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qqinv/qfield.hpp"
#include "qqinv/supertensor.hpp"

namespace qqinv {

/// A word is a byte string of generator ids; byte order is the generator
/// order, so std::string comparison is lexicographic order on words.
using Word = std::string;

/// Folded generators of O_{r,s} over I_{n|n}: t[i,a] with 1 <= i <= r, then
/// tb[al,b] with 1 <= al <= s; a, b run through I_{n|n} in increasing order.
/// A with s = 0, the barred algebra with r = 0, and A_{r,s} as (r, 0, s).
struct GenSet {
    int r = 0, s = 0, n = 1;

    GenSet() = default;
    GenSet(int r_, int s_, int n_);

    int num_t() const { return 2 * n * r; }
    int size() const { return 2 * n * (r + s); }
    /// Position of a in I_{n|n}, 0 for -n.
    int pos(int a) const { return a < 0 ? a + n : a + n - 1; }
    int index_at(int p) const { return p < n ? p - n : p - n + 1; }

    char t(int i, int a) const;
    char tb(int al, int b) const;
    bool is_t(char id) const { return static_cast<unsigned char>(id) < num_t(); }
    int row(char id) const;
    int col(char id) const;
    int parity(char id) const { return qqinv::parity(col(id)); }
    std::string name(char id) const;

    /// t_{ia} = t_{-i,-a}; returns (sign, id) with the row made positive.
    std::pair<int, char> fold_t(int i, int a) const;
    /// tb_{al,b} = (-1)^{|al|+|b|} tb_{-al,-b}.
    std::pair<int, char> fold_tb(int al, int b) const;

    int word_parity(const Word& w) const;
    /// (number of t letters, number of tb letters)
    std::pair<int, int> bidegree(const Word& w) const;
    std::string word_name(const Word& w) const;

    friend bool operator==(const GenSet& a, const GenSet& b) { return a.r == b.r && a.s == b.s && a.n == b.n; }
};

/// Finite linear combination of words with exact coefficients.
using Elem = std::map<Word, QScalar>;

void elem_add(Elem& into, const Word& w, const QScalar& c);
void elem_add(Elem& into, const Elem& x, const QScalar& c = QScalar(1));
Elem elem_scaled(const Elem& x, const QScalar& c);
/// Free (concatenation) product.
Elem elem_concat(const Elem& x, const Elem& y);
Elem elem_word(const Word& w, const QScalar& c = QScalar(1));
/// 0 or 1, or -1 when terms of both parities occur.
int elem_parity(const GenSet& g, const Elem& x);

/// "coeff * t[1,-1] tb[1,1] + coeff * ..." in word order; "0" for zero.
std::string elem_to_string(const GenSet& g, const Elem& x);
/// Inverse of elem_to_string; generator rows may be negative and are folded.
Elem elem_parse(const GenSet& g, std::string_view text);

/// Number of words of bidegree (dt, db).
double word_count(const GenSet& g, int dt, int db);
/// All words of bidegree (dt, db) in increasing order.
std::vector<Word> enumerate_words(const GenSet& g, int dt, int db);

}  // namespace qqinv
