#include "qqinv/howe.hpp"

#include <sstream>
#include <stdexcept>

#include "qqinv/relset.hpp"
#include "qqinv/supertensor.hpp"

namespace qqinv {

void pair_add(PairElem& into, const Word& u, const Word& v, const QScalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = into.emplace(std::make_pair(u, v), c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) into.erase(it);
}

std::string pair_to_string(const GenSet& g, const PairElem& x) {
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [uv, c] : x) {
        if (!first) os << " + ";
        first = false;
        os << c.to_string() << " * (" << (uv.first.empty() ? "1" : g.word_name(uv.first)) << ") ⊗ ("
           << (uv.second.empty() ? "1" : g.word_name(uv.second)) << ")";
    }
    return os.str();
}

namespace {

// T^1..T^k over A_{r,s}, each factor rows 1..r and columns I_{s|s}.
MatExpr power_of_T(const GenSet& a, int k) {
    const Space P = Space::positive(a.r), W = Space::full(a.n);
    const MatExpr T = gen_T(a, P);
    std::vector<Space> fill(k, P);
    MatExpr out;
    for (int m = 1; m <= k; ++m) {
        MatExpr f = mat_embed(T, {m}, fill);
        out = m == 1 ? f : out * f;
        fill[m - 1] = W;
    }
    return out;
}

// S^{ij} on W^{⊗k}.
SuperOp s_at(int s, int i, int j, int k) {
    return embed(build_S(s), {i, j}, std::vector<Space>(k, Space::full(s)));
}

MultiIndex key_of(const GenSet& a, const Word& w) {
    MultiIndex k;
    for (char c : w) {
        k.push_back(a.row(c));
        k.push_back(a.col(c));
    }
    return k;
}

// The signed single word at an entry of T^1..T^k.
QScalar entry_sign(const MatExpr& m, const MultiIndex& key, const Word& w) {
    const Elem e = m.entry(key);
    if (e.size() != 1 || e.begin()->first != w) throw std::logic_error("unexpected entry of a generator power");
    return e.begin()->second;
}

}  // namespace

HoweContext::HoweContext(const GenSet& g, GradedOptions opt)
    : a_(g.r, 0, g.s), a_rels_(relations_all(a_)), a_alg_(make_exact(a_, a_rels_, opt)), inv_(g, opt) {}

Elem HoweContext::delta_tilde(const Word& w) {
    const GenSet& g = inv_.gens();
    const int k = static_cast<int>(w.size());
    std::vector<int> rows(k), cols(k);
    for (int m = 0; m < k; ++m) {
        rows[m] = a_.row(w[m]);
        cols[m] = a_.col(w[m]);
    }
    const auto I = Space::full(g.n).indices();
    Elem out;
    std::vector<std::size_t> pick(k, 0);
    while (true) {
        int sign = 1;
        Word word;
        for (int m = 0; m < k; ++m) word.push_back(g.t(rows[m], I[pick[m]]));
        for (int m = k - 1; m >= 0; --m) {
            auto [sf, tb] = g.fold_tb(cols[m], I[pick[m]]);
            sign *= sf;
            word.push_back(tb);
        }
        for (int m = 0; m < k; ++m)
            for (int l = m + 1; l < k; ++l)
                if ((parity(I[pick[m]]) ^ parity(cols[m])) & parity(cols[l])) sign = -sign;
        elem_add(out, word, QScalar(sign));
        int m = k - 1;
        while (m >= 0 && ++pick[m] == I.size()) pick[m--] = 0;
        if (m < 0) break;
    }
    return inv_.algebra().split_normal_form(out);
}

Elem HoweContext::delta_tilde(const Elem& x) {
    Elem out;
    for (const auto& [w, c] : x) elem_add(out, delta_tilde(w), c);
    return out;
}

const MatExpr& HoweContext::omega_matrix(int p, int k) {
    auto it = omega_cache_.find({p, k});
    if (it != omega_cache_.end()) return it->second;
    auto pw = power_cache_.find(k);
    if (pw == power_cache_.end()) pw = power_cache_.emplace(k, power_of_T(a_, k)).first;
    SuperOp op = SuperOp::identity(std::vector<Space>(k, Space::full(a_.n)));
    for (int j = k; j > p; --j)
        for (int i = 1; i <= p; ++i) op = op * s_at(a_.n, i, j, k);
    return omega_cache_.emplace(std::make_pair(p, k), pw->second * MatExpr::scalar(a_, op)).first->second;
}

PairElem HoweContext::omega(const Word& u, const Word& v) {
    PairElem out;
    if (u.empty() || v.empty()) {
        pair_add(out, u, v, QScalar(1));
        return out;
    }
    const int p = static_cast<int>(u.size()), k = p + static_cast<int>(v.size());
    Word w = u;
    w.insert(w.end(), v.begin(), v.end());
    const MultiIndex key = key_of(a_, w);
    auto pw = power_cache_.find(k);
    if (pw == power_cache_.end()) pw = power_cache_.emplace(k, power_of_T(a_, k)).first;
    const QScalar sigma = entry_sign(pw->second, key, w);
    for (const auto& [word, c] : omega_matrix(p, k).entry(key))
        pair_add(out, Word(word.begin(), word.begin() + p), Word(word.begin() + p, word.end()), c * sigma);
    return out;
}

PairElem HoweContext::omega(const Elem& f, const Elem& g) {
    PairElem out;
    for (const auto& [u, cu] : f)
        for (const auto& [v, cv] : g)
            for (const auto& [uv, c] : omega(u, v)) pair_add(out, uv.first, uv.second, c * cu * cv);
    return out;
}

bool HoweContext::check_delta_mul(const Word& f, const Word& g, std::string* witness) {
    ExactAlgebra& alg = inv_.algebra();
    Word fg = f;
    fg.insert(fg.end(), g.begin(), g.end());
    const Elem lhs = delta_tilde(fg);
    Elem rhs;
    for (const auto& [uv, c] : omega(f, g))
        elem_add(rhs, alg.split_multiply(delta_tilde(uv.first), delta_tilde(uv.second)), c);
    if (lhs == rhs) return true;
    if (witness) {
        Elem diff = lhs;
        elem_add(diff, rhs, QScalar(-1));
        *witness = "f = " + a_.word_name(f) + ", g = " + a_.word_name(g) + ": difference " +
                   elem_to_string(inv_.gens(), diff);
    }
    return false;
}

DescentResult HoweContext::check_delta_mul_suite(int samples, std::uint64_t seed) {
    DescentResult res;
    auto note = [&](const Word& f, const Word& g) {
        ++res.checked;
        std::string w;
        if (!check_delta_mul(f, g, res.ok ? &w : nullptr)) {
            if (res.ok) res.witness = w;
            res.ok = false;
        }
    };
    for (int x = 0; x < a_.size(); ++x)
        for (int y = 0; y < a_.size(); ++y) note(Word(1, static_cast<char>(x)), Word(1, static_cast<char>(y)));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, a_.size() - 1);
    for (int k = 0; k < samples; ++k) {
        Word f{static_cast<char>(pick(rng)), static_cast<char>(pick(rng))};
        Word g{static_cast<char>(pick(rng))};
        note(f, g);
    }
    return res;
}

GenDeltaResult HoweContext::check_genDelta(int k, GenDeltaForm form) {
    GenDeltaResult res;
    const GenSet& g = inv_.gens();
    ExactAlgebra& alg = inv_.algebra();
    auto pw = power_cache_.find(k);
    if (pw == power_cache_.end()) pw = power_cache_.emplace(k, power_of_T(a_, k)).first;
    const Space P = Space::positive(g.r), W = Space::full(g.s);
    const MatExpr X = inv_.X();
    std::vector<Space> fill(k, P);
    MatExpr rhs;
    for (int m = 1; m <= k; ++m) {
        MatExpr f = mat_embed(X, {m}, fill);
        rhs = m == 1 ? f : rhs * f;
        fill[m - 1] = W;
    }
    if (k >= 2) {
        SuperOp op = SuperOp::identity(std::vector<Space>(k, W));
        for (int j = 2; j <= k; ++j)
            if (form == GenDeltaForm::FirstRow) op = op * s_at(g.s, 1, j, k);
            else
                for (int i = 1; i < j; ++i) op = op * s_at(g.s, i, j, k);
        rhs = rhs * MatExpr::scalar(g, op);
    }
    std::map<MultiIndex, Elem> left;
    for (const auto& [key, x] : pw->second.terms()) left[key] = delta_tilde(x);
    std::map<MultiIndex, Elem> right;
    for (const auto& [key, x] : rhs.terms()) right[key] = alg.split_normal_form(x);
    for (const auto& [key, x] : left) {
        ++res.entries;
        auto it = right.find(key);
        const Elem y = it == right.end() ? Elem() : it->second;
        if (x == y) continue;
        res.ok = false;
        if (res.witness.empty()) {
            std::ostringstream os;
            os << "entry";
            for (int i : key) os << ' ' << i;
            os << ": " << elem_to_string(g, x) << " vs " << elem_to_string(g, y);
            res.witness = os.str();
        }
    }
    for (const auto& [key, y] : right)
        if (!y.empty() && !left.count(key)) {
            res.ok = false;
            if (res.witness.empty()) res.witness = "entry missing on the left: " + elem_to_string(g, y);
        }
    return res;
}

DescentResult HoweContext::check_omega_descent(int p, int q) {
    DescentResult res;
    // both tensor factors reduced to A_{r,s} normal form
    auto reduced = [&](const PairElem& x) {
        std::map<std::pair<Word, Word>, QScalar> out;
        for (const auto& [uv, c] : x) {
            const Elem a = a_alg_.normal_form(elem_word(uv.first));
            const Elem b = a_alg_.normal_form(elem_word(uv.second));
            for (const auto& [wa, ca] : a)
                for (const auto& [wb, cb] : b) pair_add(out, wa, wb, c * ca * cb);
        }
        return out;
    };
    auto contexts = [&](int d) {
        std::vector<Elem> out;
        for (const Elem& rho : a_rels_)
            for (int left = 0; left + 2 <= d; ++left)
                for (const Word& u : enumerate_words(a_, left, 0))
                    for (const Word& v : enumerate_words(a_, d - 2 - left, 0))
                        out.push_back(elem_concat(elem_concat(elem_word(u), rho), elem_word(v)));
        return out;
    };
    auto fail = [&](const Elem& f, const Elem& g, const PairElem& y) {
        if (res.ok)
            res.witness = "Ω((" + elem_to_string(a_, f) + ") ⊗ (" + elem_to_string(a_, g) +
                          ")) reduces to " + pair_to_string(a_, y);
        res.ok = false;
    };
    if (p >= 2)
        for (const Elem& f : contexts(p))
            for (const Word& w : enumerate_words(a_, q, 0)) {
                ++res.checked;
                const PairElem y = reduced(omega(f, elem_word(w)));
                if (!y.empty()) fail(f, elem_word(w), y);
            }
    if (q >= 2)
        for (const Elem& f : contexts(q))
            for (const Word& w : enumerate_words(a_, p, 0)) {
                ++res.checked;
                const PairElem y = reduced(omega(elem_word(w), f));
                if (!y.empty()) fail(elem_word(w), f, y);
            }
    return res;
}

DescentResult HoweContext::check_delta_descent(int d) {
    DescentResult res;
    for (const Elem& rho : a_rels_)
        for (int left = 0; left + 2 <= d; ++left)
            for (const Word& u : enumerate_words(a_, left, 0))
                for (const Word& v : enumerate_words(a_, d - 2 - left, 0)) {
                    ++res.checked;
                    const Elem x = elem_concat(elem_concat(elem_word(u), rho), elem_word(v));
                    const Elem y = delta_tilde(x);
                    if (y.empty()) continue;
                    if (res.ok) res.witness = elem_to_string(a_, x) + " maps to " + elem_to_string(inv_.gens(), y);
                    res.ok = false;
                }
    return res;
}

InjectivityResult HoweContext::delta_injectivity(int d) {
    InjectivityResult res;
    const auto& basis = a_alg_.component(d, 0).basis;
    res.domain_dim = static_cast<int>(basis.size());
    const Subspace inv = inv_.invariant_subspace(d, d);
    res.invariant_dim = inv.dim();
    SparseRREF<QScalar> span;
    for (const Word& w : basis) {
        const auto v = inv_.algebra().coords(d, d, delta_tilde(w));
        if (!inv.contains(v)) res.images_invariant = false;
        span.insert(v);
    }
    res.rank = static_cast<int>(span.rank());
    return res;
}

}  // namespace qqinv
