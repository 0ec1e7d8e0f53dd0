#include "qqinv/actions.hpp"

#include <climits>
#include <cstdint>
#include <sstream>
#include <tuple>
#include <stdexcept>

#include "qqinv/relset.hpp"

namespace qqinv {

std::string family_name(Family f) {
    switch (f) {
        case Family::Phi: return "phi";
        case Family::Psi: return "psi";
        case Family::PsiBar: return "psibar";
    }
    return "?";
}

namespace {

int kp(int a, int b) { return parity(a) ^ parity(b); }

// Entry of a generator matrix as (coefficient, id).
std::pair<QScalar, char> single(const Elem& x) {
    if (x.size() != 1 || x.begin()->first.size() != 1) throw std::logic_error("generator matrix entry is not a single generator");
    return {x.begin()->second, x.begin()->first[0]};
}

}  // namespace

ActionTable::ActionTable(Family f, const GenSet& g, std::optional<bool> cop) : family_(f), g_(g) {
    cop_ = cop.value_or(f != Family::Phi);
    switch (f) {
        case Family::Phi:
            N_ = g.n;
            if (g.r > 0) extract_right(gen_T(g, Space::full(g.r)), build_S(g.n));
            if (g.s > 0) extract_left(gen_Tbar(g), build_S_inverse(g.n));
            break;
        case Family::Psi:
            if (g.r == 0) throw std::invalid_argument("Psi needs r > 0");
            N_ = g.r;
            extract_left(gen_T(g, Space::full(g.r)), build_S_inverse(g.r));
            break;
        case Family::PsiBar:
            if (g.s == 0) throw std::invalid_argument("PsiBar needs s > 0");
            N_ = g.s;
            extract_right(gen_Tbar(g), build_S_tilde(g.s));
            break;
    }
}

bool ActionTable::acts_on(char id) const {
    switch (family_) {
        case Family::Phi: return true;
        case Family::Psi: return g_.is_t(id);
        case Family::PsiBar: return !g_.is_t(id);
    }
    return false;
}

void ActionTable::record(const LieGen& L, char id, const Elem& img) {
    auto& row = table_[L];
    auto it = row.find(id);
    if (it == row.end()) {
        row.emplace(id, img);
        return;
    }
    if (it->second != img) {
        std::ostringstream os;
        os << family_name(family_) << ": inconsistent images of " << g_.name(id) << " under L(" << L.a << "," << L.b
           << "): " << elem_to_string(g_, it->second) << " vs " << elem_to_string(g_, img);
        throw std::logic_error(os.str());
    }
}

// L·G = G M^{13}: image(L_ab, g_rd) = σ κ_rd^{-1} Σ_c κ_rc (-1)^{|E_rc||E_ab|} M[E_cd⊗E_ab] g_rc
void ActionTable::extract_right(const MatExpr& G, const SuperOp& M) {
    const Space rows = G.dims()[0].row, cols = G.dims()[0].col;
    for (int a : Space::full(N_).indices())
        for (int b : Space::full(N_).indices()) {
            if (a > b) continue;
            const LieGen L{a, b};
            for (int r : rows.indices())
                for (int d : cols.indices()) {
                    auto [kd, id] = single(G.entry({r, d}));
                    Elem img;
                    for (int c : cols.indices()) {
                        const QScalar m = M.coeff({c, d, a, b});
                        if (m.is_zero()) continue;
                        const int e = kp(r, c) & L.parity();
                        elem_add(img, G.entry({r, c}), e ? -m : m);
                    }
                    const int sigma = L.parity() & kp(r, d);
                    record(L, id, elem_scaled(img, (sigma ? -kd : kd).inverse()));
                }
        }
}

// L·G = M^{13} G: image(L_ab, g_xc) = σ κ_xc^{-1} Σ_y M[E_xy⊗E_ab] κ_yc g_yc
void ActionTable::extract_left(const MatExpr& G, const SuperOp& M) {
    const Space rows = G.dims()[0].row, cols = G.dims()[0].col;
    for (int a : Space::full(N_).indices())
        for (int b : Space::full(N_).indices()) {
            if (a > b) continue;
            const LieGen L{a, b};
            for (int x : rows.indices())
                for (int c : cols.indices()) {
                    auto [kx, id] = single(G.entry({x, c}));
                    Elem img;
                    for (int y : rows.indices()) {
                        const QScalar m = M.coeff({x, y, a, b});
                        if (!m.is_zero()) elem_add(img, G.entry({y, c}), m);
                    }
                    const int sigma = L.parity() & kp(x, c);
                    record(L, id, elem_scaled(img, (sigma ? -kx : kx).inverse()));
                }
        }
}

std::vector<LieGen> ActionTable::generators() const {
    std::vector<LieGen> out;
    for (int a : Space::full(N_).indices())
        for (int b : Space::full(N_).indices())
            if (a <= b) out.push_back({a, b});
    return out;
}

Elem ActionTable::image(const LieGen& L, char id) const {
    if (!acts_on(id)) return L.a == L.b ? elem_word(Word(1, id)) : Elem();
    auto it = table_.find(L);
    if (it == table_.end()) throw std::out_of_range("ActionTable: unknown generator");
    auto jt = it->second.find(id);
    return jt == it->second.end() ? Elem() : jt->second;
}

Elem ActionTable::act_word(const LieGen& L, const Word& w) const {
    // states: current path index -> partial image of the processed prefix
    std::map<int, Elem> states;
    states[cop_ ? L.b : L.a] = elem_word(Word());
    const auto idx = Space::full(N_).indices();
    int prefix = 0;
    for (char letter : w) {
        std::map<int, Elem> next;
        for (const auto& [c, part] : states)
            for (int c2 : idx) {
                if (cop_ ? c2 > c : c2 < c) continue;
                const LieGen seg = cop_ ? LieGen{c2, c} : LieGen{c, c2};
                const Elem img = image(seg, letter);
                if (img.empty()) continue;
                int sign = seg.parity() & prefix;
                if (!cop_) sign ^= seg.parity() & kp(L.a, c);
                Elem term = elem_concat(part, img);
                elem_add(next[c2], term, QScalar(sign ? -1 : 1));
            }
        for (auto it = next.begin(); it != next.end();) it = it->second.empty() ? next.erase(it) : std::next(it);
        states = std::move(next);
        prefix ^= g_.parity(letter);
    }
    auto it = states.find(cop_ ? L.a : L.b);
    return it == states.end() ? Elem() : it->second;
}

Elem ActionTable::act(const LieGen& L, const Elem& x) const {
    Elem out;
    for (const auto& [w, c] : x) elem_add(out, act_word(L, w), c);
    return out;
}

std::vector<SparseVec<QScalar>> operator_matrix(ExactAlgebra& alg, const ActionTable& t, const LieGen& L, int dt,
                                                int db) {
    const auto basis = alg.component(dt, db).basis;
    std::vector<SparseVec<QScalar>> cols;
    for (const Word& w : basis) cols.push_back(alg.coords(dt, db, t.act_word(L, w)));
    return cols;
}

InvarianceResult check_relation_invariance(ExactAlgebra& alg, const ActionTable& t, const std::vector<Elem>& rels,
                                           int dt, int db) {
    InvarianceResult res;
    const GenSet& g = alg.gens();
    const auto gens = t.generators();
    for (const Elem& rho : rels) {
        if (rho.empty()) continue;
        auto [rt, rb] = g.bidegree(rho.begin()->first);
        if (rt > dt || rb > db) continue;
        const int ct = dt - rt, cb = db - rb;
        for (int ut = 0; ut <= ct; ++ut)
            for (int ub = 0; ub <= cb; ++ub) {
                const auto us = enumerate_words(g, ut, ub);
                const auto vs = enumerate_words(g, ct - ut, cb - ub);
                for (const Word& u : us)
                    for (const Word& v : vs) {
                        const Elem x = elem_concat(elem_concat(elem_word(u), rho), elem_word(v));
                        for (const LieGen& L : gens) {
                            ++res.checked;
                            Elem y = alg.normal_form(t.act(L, x));
                            if (y.empty()) continue;
                            res.ok = false;
                            std::ostringstream os;
                            os << family_name(t.family()) << " L(" << L.a << "," << L.b << ") on "
                               << elem_to_string(g, x) << " gives " << elem_to_string(g, y);
                            res.witness = os.str();
                            return res;
                        }
                    }
            }
    }
    return res;
}

DefectResult check_psi_defect(int r, int s, int n) {
    DefectResult res;
    GenSet g(r, s, n);
    ExactAlgebra alg = make_exact(g, relations_all(g));
    const ActionTable psi(Family::Psi, g);
    const QScalar xi = QScalar::xi();
    for (const Word& w : alg.component(1, 1).basis)
        if (!g.is_t(w[0])) throw std::logic_error("bidegree (1,1) basis is not of the form t tb");

    // Psi on generators against (-1)^{|a|} δ_jk t_{-i,-a}, up to a factor
    bool exact_form = true, xi_form = true;
    for (int i = -r; i < 0; ++i)
        for (int j = 1; j <= r; ++j)
            for (int k = 1; k <= r; ++k)
                for (int a : Space::full(n).indices()) {
                    Elem closed;
                    if (j == k) {
                        auto [sg, id] = g.fold_t(-i, -a);
                        elem_add(closed, Word(1, id), QScalar(sg * (parity(a) ? -1 : 1)));
                    }
                    const Elem img = psi.image({i, j}, g.t(k, a));
                    if (img != closed) exact_form = false;
                    if (img != elem_scaled(closed, xi)) xi_form = false;
                }
    res.psi_scaled_by_xi = xi_form && !exact_form;

    // commutator minus closed form; diagonal_sign multiplies the δ_ab branch
    // by (-1)^{|a|}
    auto run = [&](bool koszul, bool diagonal_sign, std::string* witness) {
        std::size_t bad = 0, cases = 0;
        bool nonzero = false;
        for (int i = -r; i < 0; ++i)
            for (int j = 1; j <= r; ++j) {
                const LieGen L{i, j};
                for (int al : Space::full(s).indices())
                    for (int b : Space::full(n).indices())
                        for (int k = 1; k <= r; ++k)
                            for (int a : Space::full(n).indices()) {
                                ++cases;
                                auto [sb, tb] = g.fold_tb(al, b);
                                const char tk = g.t(k, a);
                                Elem left = alg.multiply(elem_word(Word(1, tb)), psi.image(L, tk));
                                if (koszul && (L.parity() & g.parity(tb))) left = elem_scaled(left, QScalar(-1));
                                Elem right;
                                for (const auto& [wd, c] :
                                     alg.multiply(elem_word(Word(1, tb)), elem_word(Word(1, tk))))
                                    elem_add(right, elem_concat(psi.image(L, wd[0]), elem_word(Word(1, wd[1]))), c);
                                Elem defect = left;
                                elem_add(defect, right, QScalar(-1));
                                defect = alg.normal_form(elem_scaled(defect, QScalar(sb)));
                                if (!defect.empty()) nonzero = true;

                                Elem expect;
                                if (j == k) {
                                    const QScalar lead =
                                        QScalar((parity(a) & (parity(al) ^ parity(b))) ? -1 : 1) * xi * xi;
                                    const int diag = diagonal_sign && parity(a) ? -1 : 1;
                                    for (int p : Space::full(n).indices()) {
                                        auto [s1, t1] = g.fold_t(-i, -p);
                                        if (a == -b) {
                                            auto [s2, t2] = g.fold_tb(al, -p);
                                            elem_add(expect, Word{t1, t2}, lead * QScalar(s1 * s2));
                                        }
                                        if (a == b) {
                                            auto [s2, t2] = g.fold_tb(al, p);
                                            elem_add(expect, Word{t1, t2},
                                                     lead * QScalar(s1 * s2 * diag * (parity(p) ? -1 : 1)));
                                        }
                                    }
                                }
                                expect = alg.normal_form(expect);
                                if (defect == expect) continue;
                                if (bad++ == 0 && witness) {
                                    std::ostringstream os;
                                    os << "L(" << i << "," << j << ") on tb[" << al << "," << b << "] ⊗ t[" << k << ","
                                       << a << "]: got " << elem_to_string(g, defect) << ", expected "
                                       << elem_to_string(g, expect);
                                    *witness = os.str();
                                }
                            }
            }
        return std::tuple{bad, cases, nonzero};
    };

    std::size_t best = SIZE_MAX;
    for (bool koszul : {true, false}) {
        std::string w;
        auto [bad, cases, nonzero] = run(koszul, false, &w);
        res.cases = cases;
        res.nonzero = nonzero;
        if (bad < best) {
            best = bad;
            res.convention = koszul ? "koszul" : "plain";
            res.mismatches = bad;
            res.witness = w;
        }
    }
    res.ok = res.mismatches == 0 && res.nonzero;
    const bool koszul = res.convention == "koszul";
    res.matches_with_diagonal_sign = std::get<0>(run(koszul, true, nullptr)) == 0;
    return res;
}

}  // namespace qqinv
