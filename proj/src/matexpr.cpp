#include "qqinv/matexpr.hpp"

namespace qqinv {

MatExpr MatExpr::scalar(const GenSet& g, const SuperOp& op) {
    MatExpr out(g, op.dims());
    for (const auto& [k, c] : op.terms()) out.add(k, Word(), c);
    return out;
}

void MatExpr::add(const MultiIndex& key, const Word& w, const QScalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) it = terms_.emplace(key, Elem()).first;
    elem_add(it->second, w, c);
    if (it->second.empty()) terms_.erase(it);
}

void MatExpr::add(const MultiIndex& key, const Elem& x) {
    for (const auto& [w, c] : x) add(key, w, c);
}

Elem MatExpr::entry(const MultiIndex& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Elem() : it->second;
}

MatExpr MatExpr::scaled(const QScalar& c) const {
    MatExpr out(g_, dims_);
    for (const auto& [k, x] : terms_) out.add(k, elem_scaled(x, c));
    return out;
}

MatExpr operator+(const MatExpr& a, const MatExpr& b) {
    if (a.dims_ != b.dims_) throw DimensionMismatch("MatExpr sum: factor dimensions differ");
    MatExpr out = a;
    for (const auto& [k, x] : b.terms_) out.add(k, x);
    return out;
}

MatExpr operator-(const MatExpr& a, const MatExpr& b) { return a + b.scaled(QScalar(-1)); }

MatExpr mat_mul(const MatExpr& a, const MatExpr& b) {
    const int k = a.arity();
    if (k != b.arity()) throw DimensionMismatch("mat_mul: arity mismatch");
    if (!(a.gens() == b.gens())) throw std::invalid_argument("mat_mul: generator sets differ");
    std::vector<FactorDims> dims;
    for (int m = 0; m < k; ++m) {
        if (a.dims()[m].col != b.dims()[m].row)
            throw DimensionMismatch("mat_mul: factor " + std::to_string(m + 1) + " column space " +
                                    a.dims()[m].col.to_string() + " does not match row space " +
                                    b.dims()[m].row.to_string());
        dims.push_back({a.dims()[m].row, b.dims()[m].col});
    }
    const GenSet& g = a.gens();
    std::map<std::vector<int>, std::vector<const std::pair<const MultiIndex, Elem>*>> by_rows;
    std::vector<int> rows(k);
    for (const auto& t : b.terms()) {
        for (int m = 0; m < k; ++m) rows[m] = t.first[2 * m];
        by_rows[rows].push_back(&t);
    }
    MatExpr out(g, dims);
    std::vector<int> cols(k);
    MultiIndex key(2 * k);
    for (const auto& [ka, xa] : a.terms()) {
        for (int m = 0; m < k; ++m) cols[m] = ka[2 * m + 1];
        auto it = by_rows.find(cols);
        if (it == by_rows.end()) continue;
        for (const auto* tb : it->second) {
            const MultiIndex& kb = tb->first;
            int sign = 0, pb = 0;
            for (int m = 0; m < k; ++m) {
                int pa = parity(ka[2 * m]) ^ parity(ka[2 * m + 1]);
                sign ^= pa & pb;
                pb ^= parity(kb[2 * m]) ^ parity(kb[2 * m + 1]);
            }
            for (int m = 0; m < k; ++m) {
                key[2 * m] = ka[2 * m];
                key[2 * m + 1] = kb[2 * m + 1];
            }
            for (const auto& [wa, ca] : xa) {
                int s = sign ^ (g.word_parity(wa) & pb);
                for (const auto& [wb, cb] : tb->second) {
                    QScalar c = ca * cb;
                    out.add(key, wa + wb, s ? -c : c);
                }
            }
        }
    }
    return out;
}

MatExpr mat_embed(const MatExpr& a, const std::vector<int>& positions, const std::vector<Space>& fill) {
    const int k = static_cast<int>(fill.size());
    if (static_cast<int>(positions.size()) != a.arity())
        throw DimensionMismatch("mat_embed: number of positions differs from arity");
    for (std::size_t t = 0; t < positions.size(); ++t) {
        if (positions[t] < 1 || positions[t] > k) throw std::out_of_range("mat_embed: position out of range");
        if (t > 0 && positions[t] <= positions[t - 1]) throw std::invalid_argument("mat_embed: positions must increase");
    }
    std::vector<Space> others;
    std::vector<int> other_slots;
    std::vector<FactorDims> dims(k);
    std::size_t t = 0;
    for (int m = 0; m < k; ++m) {
        if (t < positions.size() && positions[t] == m + 1) {
            dims[m] = a.dims()[t++];
        } else {
            others.push_back(fill[m]);
            other_slots.push_back(m);
            dims[m] = {fill[m], fill[m]};
        }
    }
    SuperOp id = SuperOp::identity(others);
    MatExpr out(a.gens(), dims);
    MultiIndex key(2 * k);
    for (const auto& [ka, x] : a.terms()) {
        for (std::size_t u = 0; u < positions.size(); ++u) {
            key[2 * (positions[u] - 1)] = ka[2 * u];
            key[2 * (positions[u] - 1) + 1] = ka[2 * u + 1];
        }
        for (const auto& [ki, ci] : id.terms()) {
            for (std::size_t u = 0; u < other_slots.size(); ++u) {
                key[2 * other_slots[u]] = ki[2 * u];
                key[2 * other_slots[u] + 1] = ki[2 * u + 1];
            }
            out.add(key, x);
        }
    }
    return out;
}

MatExpr gen_T(const GenSet& g, const Space& rows) {
    if (rows.n != g.r) throw DimensionMismatch("gen_T: row space does not match r");
    const Space cols = Space::full(g.n);
    MatExpr out(g, {{rows, cols}});
    for (int i : rows.indices())
        for (int a : cols.indices()) {
            auto [s, id] = g.fold_t(i, a);
            out.add({i, a}, Word(1, id), QScalar(s));
        }
    return out;
}

MatExpr gen_Tbar(const GenSet& g) {
    const Space rows = Space::full(g.n), cols = Space::full(g.s);
    MatExpr out(g, {{rows, cols}});
    for (int b : rows.indices())
        for (int al : cols.indices()) {
            auto [s, id] = g.fold_tb(al, b);
            int e = parity(b) & (parity(al) ^ parity(b));
            out.add({b, al}, Word(1, id), QScalar(e ? -s : s));
        }
    return out;
}

std::vector<Elem> mat_entries(const MatExpr& m) {
    std::vector<Elem> out;
    for (const auto& [k, x] : m.terms())
        if (!x.empty()) out.push_back(x);
    return out;
}

}  // namespace qqinv
