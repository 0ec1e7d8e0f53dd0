#include "qqinv/invariants.hpp"

#include <sstream>
#include <stdexcept>

#include "qqinv/relset.hpp"
#include "qqinv/supertensor.hpp"

namespace qqinv {

namespace {

std::string vec_string(const GenSet& g, ExactAlgebra& alg, int dt, int db, const SparseVec<QScalar>& v) {
    return elem_to_string(g, alg.from_coords(dt, db, v));
}

}  // namespace

InvariantContext::InvariantContext(const GenSet& g, GradedOptions opt)
    : g_(g), rels_(relations_all(g)), alg_(make_exact(g, rels_, opt)), phi_(Family::Phi, g) {
    if (g.r < 1 || g.s < 1) throw std::invalid_argument("invariants need r >= 1 and s >= 1");
}

Elem InvariantContext::x(int i, int al) {
    Elem out;
    for (int p : Space::full(g_.n).indices()) {
        auto [s1, t] = g_.fold_t(i, p);
        auto [s2, tb] = g_.fold_tb(al, p);
        elem_add(out, Word{t, tb}, QScalar(s1 * s2));
    }
    return alg_.normal_form(out);
}

MatExpr InvariantContext::X() {
    MatExpr out(g_, {{Space::positive(g_.r), Space::full(g_.s)}});
    for (int i = 1; i <= g_.r; ++i)
        for (int al : Space::full(g_.s).indices()) out.add({i, al}, x(i, al));
    return out;
}

bool InvariantContext::x_matches_matrix_product() {
    const MatExpr prod = gen_T(g_, Space::positive(g_.r)) * gen_Tbar(g_);
    for (int i = 1; i <= g_.r; ++i)
        for (int al : Space::full(g_.s).indices())
            if (alg_.normal_form(prod.entry({i, al})) != x(i, al)) return false;
    return true;
}

bool InvariantContext::x_invariant(int i, int al) {
    const Elem xi = x(i, al);
    for (const LieGen& L : phi_.generators()) {
        Elem img = alg_.normal_form(phi_.act(L, xi));
        if (L.a == L.b) elem_add(img, xi, QScalar(-1));
        if (!img.empty()) return false;
    }
    return true;
}

Subspace InvariantContext::invariant_subspace(int dt, int db) {
    const auto& comp = alg_.component(dt, db);
    const int dim = comp.dim();
    Subspace out;
    out.dt = dt;
    out.db = db;
    out.ambient = dim;
    // The diagonal generators act by scalars on basis words.
    std::vector<int> weight_zero;
    for (int c = 0; c < dim; ++c) {
        const Word& w = comp.basis[c];
        bool keep = true;
        for (int a : Space::full(g_.n).indices()) {
            const Elem img = phi_.act_word({a, a}, w);
            if (img.size() != 1 || img.begin()->first != w)
                throw std::logic_error("diagonal generator is not diagonal on " + g_.word_name(w));
            if (!img.begin()->second.is_one()) {
                keep = false;
                break;
            }
        }
        if (keep) weight_zero.push_back(c);
    }
    if (weight_zero.empty()) return out;

    // rows: (generator, output coordinate) -> local column
    std::map<std::pair<int, int>, SparseVec<QScalar>> rows;
    int gi = 0;
    for (const LieGen& L : phi_.generators()) {
        if (L.a == L.b) continue;
        for (std::size_t lc = 0; lc < weight_zero.size(); ++lc) {
            const auto v = alg_.coords(dt, db, phi_.act_word(L, comp.basis[weight_zero[lc]]));
            for (const auto& [row, val] : v) add_entry(rows[{gi, row}], static_cast<int>(lc), val);
        }
        ++gi;
    }
    std::vector<SparseVec<QScalar>> stacked;
    stacked.reserve(rows.size());
    for (auto& [k, r] : rows)
        if (!r.empty()) stacked.push_back(std::move(r));
    for (const auto& v : nullspace(stacked, static_cast<int>(weight_zero.size()))) {
        SparseVec<QScalar> full;
        for (const auto& [lc, val] : v) full.emplace(weight_zero[lc], val);
        out.vectors.push_back(full);
        out.rref.insert(std::move(full));
    }
    return out;
}

Subspace InvariantContext::x_span(int d) {
    Subspace out;
    out.dt = out.db = d;
    out.ambient = alg_.dim(d, d);
    std::vector<Elem> xs;
    for (int i = 1; i <= g_.r; ++i)
        for (int al : Space::full(g_.s).indices()) xs.push_back(x(i, al));
    // all products of length d, built up one factor at a time in normal form
    std::vector<Elem> level{elem_word(Word())};
    for (int k = 0; k < d; ++k) {
        std::vector<Elem> next;
        for (const Elem& p : level)
            for (const Elem& y : xs) next.push_back(alg_.multiply(p, y));
        level = std::move(next);
    }
    for (const Elem& p : level) {
        auto v = alg_.coords(d, d, p);
        if (out.rref.insert(v)) out.vectors.push_back(std::move(v));
    }
    return out;
}

FftReport fft_check(InvariantContext& ctx, int dmax) {
    FftReport rep;
    ExactAlgebra& alg = ctx.algebra();
    const GenSet& g = ctx.gens();
    for (int total = 0; total <= 2 * dmax; ++total)
        for (int dt = total; dt >= 0; --dt) {
            const int db = total - dt;
            FftEntry e;
            e.dt = dt;
            e.db = db;
            const auto& comp = alg.component(dt, db);
            e.words = comp.words;
            e.relation_rank = comp.relation_rank();
            e.component_dim = comp.dim();
            const Subspace inv = ctx.invariant_subspace(dt, db);
            e.invariant_dim = inv.dim();
            if (dt == db) {
                const Subspace xs = ctx.x_span(dt);
                e.x_span_dim = xs.dim();
                for (const auto& v : xs.vectors)
                    if (!inv.contains(v)) {
                        e.contained = false;
                        if (rep.witness.empty())
                            rep.witness = "(" + std::to_string(dt) + "," + std::to_string(db) +
                                          "): x-product not invariant: " + vec_string(g, alg, dt, db, v);
                        break;
                    }
                e.ok = e.contained && e.x_span_dim == e.invariant_dim;
                if (!e.ok && rep.witness.empty()) {
                    for (const auto& v : inv.vectors)
                        if (!xs.contains(v)) {
                            rep.witness = "(" + std::to_string(dt) + "," + std::to_string(db) +
                                          "): invariant outside the x-span: " + vec_string(g, alg, dt, db, v);
                            break;
                        }
                }
            } else {
                e.ok = e.invariant_dim == 0;
                if (!e.ok && rep.witness.empty())
                    rep.witness = "(" + std::to_string(dt) + "," + std::to_string(db) +
                                  "): off-diagonal invariant: " + vec_string(g, alg, dt, db, inv.vectors.front());
            }
            rep.ok = rep.ok && e.ok;
            rep.entries.push_back(e);
        }
    return rep;
}

XRelationResult check_X_relations(InvariantContext& ctx) {
    XRelationResult res;
    const GenSet& g = ctx.gens();
    ExactAlgebra& alg = ctx.algebra();
    const Space P = Space::positive(g.r), V = Space::full(g.n), W = Space::full(g.s);
    const MatExpr X = ctx.X(), T = gen_T(g, P), B = gen_Tbar(g);

    auto same = [&](const MatExpr& lhs, const MatExpr& rhs, const char* name) {
        const MatExpr diff = lhs - rhs;
        for (const auto& [k, x] : diff.terms()) {
            const Elem y = alg.normal_form(x);
            if (y.empty()) continue;
            if (res.witness.empty()) {
                std::ostringstream os;
                os << name << " entry";
                for (int i : k) os << ' ' << i;
                os << ": " << elem_to_string(g, y);
                res.witness = os.str();
            }
            return false;
        }
        return true;
    };

    const MatExpr R = MatExpr::scalar(g, build_R(g.r));
    res.xt = same(R * mat_embed(X, {1}, {P, P}) * mat_embed(T, {2}, {W, P}),
                  mat_embed(T, {2}, {P, P}) * mat_embed(X, {1}, {P, V}), "XT");
    res.xbart = same(mat_embed(B, {1}, {V, P}) * mat_embed(X, {2}, {W, W}) * MatExpr::scalar(g, build_S(g.s)),
                     mat_embed(X, {2}, {V, V}) * mat_embed(B, {1}, {V, W}), "XbarT");
    const SuperOp Ps = build_P(g.s);
    res.xx = same(R * mat_embed(X, {1}, {P, P}) * mat_embed(X, {2}, {W, W}),
                  mat_embed(X, {2}, {P, P}) * mat_embed(X, {1}, {W, W}) * MatExpr::scalar(g, Ps * build_S(g.s) * Ps),
                  "XX");
    return res;
}

}  // namespace qqinv
