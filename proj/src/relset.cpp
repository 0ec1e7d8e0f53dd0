#include "qqinv/relset.hpp"

#include <initializer_list>
#include <set>

#include "qqinv/linalg.hpp"
#include "qqinv/matexpr.hpp"

namespace qqinv {

namespace {

struct Gen {
    bool bar;
    int row, col;
};

int phi(int i, int j) {
    int d = (i == j ? 1 : 0) + (i == -j ? 1 : 0);
    return parity(j) ? -d : d;
}

int delta(bool b) { return b ? 1 : 0; }

QScalar sgn(int e) { return QScalar(e % 2 ? -1 : 1); }

void add_term(const GenSet& g, Elem& x, const QScalar& c, std::initializer_list<Gen> gens) {
    if (c.is_zero()) return;
    Word w;
    int sign = 1;
    for (const Gen& h : gens) {
        auto [s, id] = h.bar ? g.fold_tb(h.row, h.col) : g.fold_t(h.row, h.col);
        sign *= s;
        w.push_back(id);
    }
    elem_add(x, w, sign < 0 ? -c : c);
}

void push_nonzero(std::vector<Elem>& out, Elem x) {
    if (!x.empty()) out.push_back(std::move(x));
}

std::vector<Elem> difference_entries(const MatExpr& lhs, const MatExpr& rhs) { return mat_entries(lhs - rhs); }

}  // namespace

std::vector<Elem> relations_A(const GenSet& g) {
    std::vector<Elem> out;
    const QScalar xi = QScalar::xi();
    const auto I = Space::full(g.n).indices();
    for (int i = 1; i <= g.r; ++i)
        for (int j = 1; j <= g.r; ++j)
            for (int a : I)
                for (int b : I) {
                    Elem x;
                    add_term(g, x, QScalar::q_pow(delta(i == j)), {{false, i, a}, {false, j, b}});
                    add_term(g, x, -sgn(parity(a) * parity(b)) * QScalar::q_pow(phi(a, b)), {{false, j, b}, {false, i, a}});
                    add_term(g, x, -xi * QScalar(delta(a < b) - delta(j < i)), {{false, j, a}, {false, i, b}});
                    add_term(g, x, -sgn(parity(b)) * xi * QScalar(delta(-a < b)), {{false, j, -a}, {false, i, -b}});
                    push_nonzero(out, std::move(x));
                }
    return out;
}

std::vector<Elem> relations_A_unfolded(const GenSet& g) {
    std::vector<Elem> out;
    const QScalar xi = QScalar::xi();
    const auto I = Space::full(g.n).indices();
    const auto R = Space::full(g.r).indices();
    for (int i : R)
        for (int j : R)
            for (int a : I)
                for (int b : I) {
                    const int pi = parity(i), pj = parity(j), pa = parity(a), pb = parity(b);
                    const QScalar lead = sgn(pi * pj + pj * pb + pb * pi);
                    Elem x;
                    add_term(g, x, lead * QScalar::q_pow(phi(i, j)), {{false, i, a}, {false, j, b}});
                    add_term(g, x, -lead * sgn((pi + pa) * (pj + pb)) * QScalar::q_pow(phi(a, b)),
                             {{false, j, b}, {false, i, a}});
                    add_term(g, x, -xi * QScalar(delta(a < b) - delta(j < i)), {{false, j, a}, {false, i, b}});
                    add_term(g, x, -sgn(pj + pb) * xi * QScalar(delta(-a < b) - delta(j < -i)),
                             {{false, j, -a}, {false, i, -b}});
                    push_nonzero(out, std::move(x));
                }
    return out;
}

std::vector<Elem> relations_A_matrix(const GenSet& g) {
    const Space P = Space::positive(g.r), V = Space::full(g.n);
    const MatExpr T = gen_T(g, P);
    MatExpr lhs = MatExpr::scalar(g, build_R(g.r)) * mat_embed(T, {1}, {V, P}) * mat_embed(T, {2}, {V, P});
    MatExpr rhs = mat_embed(T, {2}, {P, V}) * mat_embed(T, {1}, {V, V}) * MatExpr::scalar(g, build_S(g.n));
    return difference_entries(lhs, rhs);
}

std::vector<Elem> relations_A_full_matrix(const GenSet& g) {
    const Space F = Space::full(g.r), V = Space::full(g.n);
    const MatExpr T = gen_T(g, F);
    MatExpr lhs = MatExpr::scalar(g, build_S(g.r)) * mat_embed(T, {1}, {V, F}) * mat_embed(T, {2}, {V, F});
    MatExpr rhs = mat_embed(T, {2}, {F, V}) * mat_embed(T, {1}, {V, V}) * MatExpr::scalar(g, build_S(g.n));
    return difference_entries(lhs, rhs);
}

std::vector<Elem> relations_A_negative_matrix(const GenSet& g) {
    const Space N = Space::negative(g.r), V = Space::full(g.n);
    const MatExpr T = gen_T(g, N);
    MatExpr lhs = MatExpr::scalar(g, build_R_prime(g.r)) * mat_embed(T, {1}, {V, N}) * mat_embed(T, {2}, {V, N});
    MatExpr rhs = mat_embed(T, {2}, {N, V}) * mat_embed(T, {1}, {V, V}) * MatExpr::scalar(g, build_S_prime(g.n));
    return difference_entries(lhs, rhs);
}

std::vector<Elem> relations_Abar(const GenSet& g) {
    const Space V = Space::full(g.n), W = Space::full(g.s);
    const MatExpr B = gen_Tbar(g);
    MatExpr lhs = mat_embed(B, {1}, {V, V}) * mat_embed(B, {2}, {W, V}) * MatExpr::scalar(g, build_S(g.s));
    MatExpr rhs = MatExpr::scalar(g, build_S(g.n)) * mat_embed(B, {2}, {V, V}) * mat_embed(B, {1}, {V, W});
    return difference_entries(lhs, rhs);
}

std::vector<Elem> relations_cross(const GenSet& g, int rows) {
    std::vector<Elem> out;
    const QScalar xi = QScalar::xi();
    const auto I = Space::full(g.n).indices();
    for (int al : Space::full(g.s).indices()) {
        if ((rows > 0 && al < 0) || (rows < 0 && al > 0)) continue;
        for (int b : I)
            for (int i = 1; i <= g.r; ++i)
                for (int a : I) {
                    const int pa = parity(a), pal = parity(al), pb = parity(b);
                    Elem x;
                    add_term(g, x, QScalar(1), {{true, al, b}, {false, i, a}});
                    add_term(g, x, -sgn(pa * (pal + pb)) * QScalar::q_pow(-phi(b, a)), {{false, i, a}, {true, al, b}});
                    const QScalar c = sgn(pa * pal) * xi;
                    for (int p : I) {
                        if (!(p < a)) continue;
                        if (a == b) add_term(g, x, c, {{false, i, p}, {true, al, p}});
                        if (a == -b) add_term(g, x, c * sgn(parity(p)), {{false, i, p}, {true, al, -p}});
                    }
                    push_nonzero(out, std::move(x));
                }
    }
    return out;
}

std::vector<Elem> relations_cross_matrix(const GenSet& g) {
    const Space P = Space::positive(g.r), V = Space::full(g.n), W = Space::full(g.s);
    const MatExpr T = gen_T(g, P), B = gen_Tbar(g);
    MatExpr lhs = mat_embed(B, {1}, {V, P}) * mat_embed(T, {2}, {W, V});
    MatExpr rhs = mat_embed(T, {2}, {V, V}) * MatExpr::scalar(g, build_S_inverse(g.n)) * mat_embed(B, {1}, {V, V});
    return difference_entries(lhs, rhs);
}

std::vector<Elem> relations_cross_alternative(const GenSet& g) {
    const Space N = Space::negative(g.r), V = Space::full(g.n), W = Space::full(g.s);
    const MatExpr T = gen_T(g, N), B = gen_Tbar(g);
    MatExpr lhs = mat_embed(B, {1}, {V, N}) * mat_embed(T, {2}, {W, V});
    // (1⊗J) S^{-1} (1⊗J)^{-1}, the conjugate of S^{-1}
    const SuperOp j2 = embed(build_J(g.n), {2}, {V, V});
    const SuperOp conj = j2 * build_S_inverse(g.n) * j2.scaled(QScalar(-1));
    MatExpr rhs = mat_embed(T, {2}, {V, V}) * MatExpr::scalar(g, conj) * mat_embed(B, {1}, {V, V});
    return difference_entries(lhs, rhs);
}

std::vector<Elem> relations_all(const GenSet& g) {
    std::vector<Elem> out;
    if (g.r > 0)
        for (auto& x : relations_A(g)) out.push_back(std::move(x));
    if (g.s > 0)
        for (auto& x : relations_Abar(g)) out.push_back(std::move(x));
    if (g.r > 0 && g.s > 0)
        for (auto& x : relations_cross(g)) out.push_back(std::move(x));
    return reduce_relations(out);
}

namespace {

struct WordSpace {
    std::vector<Word> words;
    std::map<Word, int> index;

    explicit WordSpace(std::initializer_list<const std::vector<Elem>*> sets) {
        std::set<Word> all;
        for (const auto* s : sets)
            for (const auto& x : *s)
                for (const auto& [w, c] : x) all.insert(w);
        words.assign(all.begin(), all.end());
        for (std::size_t k = 0; k < words.size(); ++k) index.emplace(words[k], static_cast<int>(k));
    }
    SparseVec<QScalar> vec(const Elem& x) const {
        SparseVec<QScalar> v;
        for (const auto& [w, c] : x) v.emplace(index.at(w), c);
        return v;
    }
    Elem elem(const SparseVec<QScalar>& v) const {
        Elem x;
        for (const auto& [k, c] : v) x.emplace(words[static_cast<std::size_t>(k)], c);
        return x;
    }
};

SparseRREF<QScalar> echelon(const WordSpace& ws, const std::vector<Elem>& rels) {
    SparseRREF<QScalar> e;
    for (const auto& x : rels) e.insert(ws.vec(x));
    return e;
}

}  // namespace

std::vector<Elem> reduce_relations(const std::vector<Elem>& rels) {
    WordSpace ws({&rels});
    SparseRREF<QScalar> e = echelon(ws, rels);
    e.back_substitute();
    std::vector<Elem> out;
    for (const auto& [p, row] : e.rows()) out.push_back(ws.elem(row));
    return out;
}

bool span_contains(const std::vector<Elem>& big, const std::vector<Elem>& small) {
    WordSpace ws({&big, &small});
    SparseRREF<QScalar> e = echelon(ws, big);
    for (const auto& x : small)
        if (!e.contains(ws.vec(x))) return false;
    return true;
}

bool same_span(const std::vector<Elem>& a, const std::vector<Elem>& b) {
    return span_contains(a, b) && span_contains(b, a);
}

std::size_t span_rank(const std::vector<Elem>& rels) {
    WordSpace ws({&rels});
    return echelon(ws, rels).rank();
}

bool relations_A_unfolded_equivalence(int r, int n) {
    GenSet g(r, 0, n);
    return same_span(relations_A_unfolded(g), relations_A(g));
}

bool relations_cross_alternative_equivalence(int r, int s, int n) {
    GenSet g(r, s, n);
    return same_span(relations_cross_alternative(g), relations_cross(g));
}

std::string dump_relations(const GenSet& g, const std::vector<Elem>& rels) {
    std::string out;
    for (const auto& x : reduce_relations(rels)) {
        out += elem_to_string(g, x);
        out += '\n';
    }
    return out;
}

}  // namespace qqinv
