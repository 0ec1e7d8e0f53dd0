#pragma once

// Quadratic relations of A_{r,n}, of its barred partner, and the cross
// relations of the braided product, over folded generators.

#include <string>
#include <vector>

#include "qqinv/words.hpp"

namespace qqinv {

/// Explicit relations for 1 <= i, j <= r, all a, b (zero relations dropped).
std::vector<Elem> relations_A(const GenSet& g);
/// Explicit relations over all signed rows i, j, folded.
std::vector<Elem> relations_A_unfolded(const GenSet& g);
/// Entries of R^{12}T_+^1T_+^2 - T_+^2T_+^1S^{12}.
std::vector<Elem> relations_A_matrix(const GenSet& g);
/// Entries of S_r^{12}T^1T^2 - T^2T^1S_n^{12} with all signed rows.
std::vector<Elem> relations_A_full_matrix(const GenSet& g);
/// Entries of R'^{12}T_-^1T_-^2 - T_-^2T_-^1S'^{12}.
std::vector<Elem> relations_A_negative_matrix(const GenSet& g);

/// Entries of Tb^1Tb^2S_s^{12} - S_n^{12}Tb^2Tb^1.
std::vector<Elem> relations_Abar(const GenSet& g);

/// Explicit cross relations tb_{al b} t_{ia} - (...) for every signed al;
/// with rows = +1 or -1 only the al of that sign are used, 0 means all.
std::vector<Elem> relations_cross(const GenSet& g, int rows = 0);
/// Entries of Tb^1T_+^2 - T_+^2(S_n^{-1})^{12}Tb^1.
std::vector<Elem> relations_cross_matrix(const GenSet& g);
/// Entries of Tb^1T_-^2 - T_-^2 C^{12} Tb^1 with C = (1⊗J)S^{-1}(1⊗J)^{-1}.
std::vector<Elem> relations_cross_alternative(const GenSet& g);

/// Everything needed to present the algebra of g: A part when r > 0,
/// barred part when s > 0, cross part when both.
std::vector<Elem> relations_all(const GenSet& g);

/// Row-reduced basis of the span (pivot coefficient 1, largest word first
/// eliminated from all other rows), ordered by pivot word.
std::vector<Elem> reduce_relations(const std::vector<Elem>& rels);
bool span_contains(const std::vector<Elem>& big, const std::vector<Elem>& small);
bool same_span(const std::vector<Elem>& a, const std::vector<Elem>& b);
std::size_t span_rank(const std::vector<Elem>& rels);

/// The unfolded explicit relations span the same space as relations_A.
bool relations_A_unfolded_equivalence(int r, int n);
/// The alternative cross relations span the same space as relations_cross.
bool relations_cross_alternative_equivalence(int r, int s, int n);

/// One reduced relation per line.
std::string dump_relations(const GenSet& g, const std::vector<Elem>& rels);

}  // namespace qqinv
