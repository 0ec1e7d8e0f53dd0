#include "qqinv/supertensor.hpp"

#include <sstream>

namespace qqinv {

std::vector<int> Space::indices() const {
    std::vector<int> out;
    if (kind != Kind::Positive)
        for (int i = -n; i <= -1; ++i) out.push_back(i);
    if (kind != Kind::Negative)
        for (int i = 1; i <= n; ++i) out.push_back(i);
    return out;
}

bool Space::contains(int i) const {
    if (i == 0 || i > n || i < -n) return false;
    if (kind == Kind::Positive) return i > 0;
    if (kind == Kind::Negative) return i < 0;
    return true;
}

std::string Space::to_string() const {
    switch (kind) {
        case Kind::Full: return "full(" + std::to_string(n) + ")";
        case Kind::Positive: return "positive(" + std::to_string(n) + ")";
        case Kind::Negative: return "negative(" + std::to_string(n) + ")";
    }
    return "?";
}

int term_parity(const MultiIndex& key) {
    int p = 0;
    for (int x : key) p ^= parity(x);
    return p;
}

std::string unit_name(int r, int c) { return "E_{" + std::to_string(r) + "," + std::to_string(c) + "}"; }

SuperOp SuperOp::identity(const std::vector<Space>& spaces) {
    std::vector<FactorDims> dims;
    for (const auto& s : spaces) dims.push_back({s, s});
    SuperOp out(dims);
    std::vector<std::vector<int>> idx;
    for (const auto& s : spaces) idx.push_back(s.indices());
    MultiIndex key(2 * spaces.size());
    std::vector<std::size_t> pos(spaces.size(), 0);
    if (spaces.empty()) {
        out.add({}, QScalar(1));
        return out;
    }
    while (true) {
        for (std::size_t m = 0; m < spaces.size(); ++m) key[2 * m] = key[2 * m + 1] = idx[m][pos[m]];
        out.terms_.emplace(key, QScalar(1));
        std::size_t m = spaces.size();
        while (m > 0) {
            --m;
            if (++pos[m] < idx[m].size()) break;
            pos[m] = 0;
            if (m == 0) return out;
        }
    }
}

void SuperOp::add(const MultiIndex& key, const QScalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

QScalar SuperOp::coeff(const MultiIndex& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? QScalar() : it->second;
}

int SuperOp::parity() const {
    int p = -2;
    for (const auto& [k, c] : terms_) {
        int t = term_parity(k);
        if (p == -2) p = t;
        else if (p != t) return -1;
    }
    return p == -2 ? 0 : p;
}

SuperOp SuperOp::scaled(const QScalar& c) const {
    SuperOp out(dims_);
    if (c.is_zero()) return out;
    for (const auto& [k, v] : terms_) out.terms_.emplace(k, v * c);
    return out;
}

SuperOp operator+(const SuperOp& a, const SuperOp& b) {
    if (a.dims_ != b.dims_) throw DimensionMismatch("SuperOp sum: factor dimensions differ");
    SuperOp out = a;
    for (const auto& [k, v] : b.terms_) out.add(k, v);
    return out;
}

SuperOp operator-(const SuperOp& a, const SuperOp& b) { return a + b.scaled(QScalar(-1)); }

std::string SuperOp::dump() const {
    std::ostringstream os;
    for (const auto& [k, c] : terms_) {
        os << c.to_string() << " · ";
        for (std::size_t m = 0; 2 * m < k.size(); ++m) {
            if (m) os << "⊗";
            os << unit_name(k[2 * m], k[2 * m + 1]);
        }
        os << '\n';
    }
    return os.str();
}

SuperOp op_mul(const SuperOp& a, const SuperOp& b) {
    const int k = a.arity();
    if (k != b.arity()) throw DimensionMismatch("op_mul: arity mismatch");
    std::vector<FactorDims> dims;
    for (int m = 0; m < k; ++m) {
        if (a.dims()[m].col != b.dims()[m].row)
            throw DimensionMismatch("op_mul: factor " + std::to_string(m + 1) + " column space " +
                                    a.dims()[m].col.to_string() + " does not match row space " +
                                    b.dims()[m].row.to_string());
        dims.push_back({a.dims()[m].row, b.dims()[m].col});
    }
    std::map<std::vector<int>, std::vector<std::pair<const MultiIndex*, const QScalar*>>> by_rows;
    std::vector<int> rows(k);
    for (const auto& [key, c] : b.terms()) {
        for (int m = 0; m < k; ++m) rows[m] = key[2 * m];
        by_rows[rows].emplace_back(&key, &c);
    }
    SuperOp out(dims);
    std::vector<int> cols(k);
    MultiIndex key(2 * k);
    for (const auto& [ka, ca] : a.terms()) {
        for (int m = 0; m < k; ++m) cols[m] = ka[2 * m + 1];
        auto it = by_rows.find(cols);
        if (it == by_rows.end()) continue;
        for (const auto& [kb, cb] : it->second) {
            // sum over l < m of |A_m||B_l|
            int sign = 0, pb = 0;
            for (int m = 0; m < k; ++m) {
                int pa = parity(ka[2 * m]) ^ parity(ka[2 * m + 1]);
                sign ^= pa & pb;
                pb ^= parity((*kb)[2 * m]) ^ parity((*kb)[2 * m + 1]);
            }
            for (int m = 0; m < k; ++m) {
                key[2 * m] = ka[2 * m];
                key[2 * m + 1] = (*kb)[2 * m + 1];
            }
            QScalar c = ca * *cb;
            out.add(key, sign ? -c : c);
        }
    }
    return out;
}

SuperOp embed(const SuperOp& a, const std::vector<int>& positions, const std::vector<Space>& spaces) {
    const int k = static_cast<int>(spaces.size());
    if (static_cast<int>(positions.size()) != a.arity())
        throw DimensionMismatch("embed: number of positions differs from operator arity");
    for (std::size_t t = 0; t < positions.size(); ++t) {
        if (positions[t] < 1 || positions[t] > k) throw std::out_of_range("embed: position out of range");
        if (t > 0 && positions[t] <= positions[t - 1]) throw std::invalid_argument("embed: positions must increase");
    }
    std::vector<Space> others;
    std::vector<int> other_slots;
    std::vector<FactorDims> dims(k);
    std::size_t t = 0;
    for (int m = 0; m < k; ++m) {
        if (t < positions.size() && positions[t] == m + 1) {
            dims[m] = a.dims()[t++];
        } else {
            others.push_back(spaces[m]);
            other_slots.push_back(m);
            dims[m] = {spaces[m], spaces[m]};
        }
    }
    SuperOp id = SuperOp::identity(others);
    SuperOp out(dims);
    MultiIndex key(2 * k);
    for (const auto& [ka, ca] : a.terms()) {
        for (std::size_t u = 0; u < positions.size(); ++u) {
            key[2 * (positions[u] - 1)] = ka[2 * u];
            key[2 * (positions[u] - 1) + 1] = ka[2 * u + 1];
        }
        for (const auto& [ki, ci] : id.terms()) {
            for (std::size_t u = 0; u < other_slots.size(); ++u) {
                key[2 * other_slots[u]] = ki[2 * u];
                key[2 * other_slots[u] + 1] = ki[2 * u + 1];
            }
            out.add(key, ca);
        }
    }
    return out;
}

SuperOp restrict_to(const SuperOp& a, const std::vector<FactorDims>& dims) {
    if (static_cast<int>(dims.size()) != a.arity()) throw DimensionMismatch("restrict_to: arity mismatch");
    SuperOp out(dims);
    for (const auto& [k, c] : a.terms()) {
        bool keep = true;
        for (std::size_t m = 0; m < dims.size() && keep; ++m)
            keep = dims[m].row.contains(k[2 * m]) && dims[m].col.contains(k[2 * m + 1]);
        if (keep) out.add(k, c);
    }
    return out;
}

namespace {

int phi(int i, int j) {
    int d = (i == j ? 1 : 0) + (i == -j ? 1 : 0);
    return parity(j) ? -d : d;
}

SuperOp s_family(int n, int qsign) {
    const Space V = Space::full(n);
    SuperOp out({{V, V}, {V, V}});
    const auto idx = V.indices();
    for (int i : idx)
        for (int j : idx) out.add({i, i, j, j}, QScalar::q_pow(qsign * phi(i, j)));
    const QScalar x = qsign > 0 ? QScalar::xi() : -QScalar::xi();
    for (int i : idx)
        for (int j : idx) {
            if (!(i < j)) continue;
            QScalar c = parity(i) ? -x : x;
            out.add({j, i, i, j}, c);
            out.add({-j, -i, i, j}, c);
        }
    return out;
}

SuperOp one_factor_diag(int s, int sign) {
    const Space V = Space::full(s);
    SuperOp out({{V, V}});
    for (int a : V.indices()) {
        int e = 2 * (parity(a) ? -a : a);
        out.add({a, a}, QScalar::q_pow(sign * e));
    }
    return out;
}

}  // namespace

SuperOp build_S(int n) { return s_family(n, +1); }
SuperOp build_S_inverse(int n) { return s_family(n, -1); }

SuperOp build_R(int r) {
    const Space P = Space::positive(r);
    return restrict_to(build_S(r), {{P, P}, {P, P}});
}

SuperOp build_R_prime(int r) {
    const Space N = Space::negative(r);
    return restrict_to(build_S_prime(r), {{N, N}, {N, N}});
}

SuperOp build_P(int m) {
    const Space V = Space::full(m);
    SuperOp out({{V, V}, {V, V}});
    for (int a : V.indices())
        for (int b : V.indices()) out.add({b, a, a, b}, QScalar(parity(a) ? -1 : 1));
    return out;
}

SuperOp build_J(int n) {
    const Space V = Space::full(n);
    SuperOp out({{V, V}});
    for (int a : V.indices()) out.add({-a, a}, QScalar(parity(a) ? -1 : 1));
    return out;
}

SuperOp build_D(int s) { return one_factor_diag(s, +1); }
SuperOp build_D_inverse(int s) { return one_factor_diag(s, -1); }

SuperOp build_S_tilde(int s) {
    const Space V = Space::full(s);
    const std::vector<Space> sp{V, V};
    return embed(build_D(s), {2}, sp) * build_S(s) * embed(build_D_inverse(s), {2}, sp);
}

SuperOp build_S_prime(int n) {
    const Space V = Space::full(n);
    const std::vector<Space> sp{V, V};
    SuperOp j2 = embed(build_J(n), {2}, sp);
    return j2 * build_S(n) * j2;
}

SuperOp build_S_prime_inverse(int n) {
    const Space V = Space::full(n);
    const std::vector<Space> sp{V, V};
    SuperOp j2 = embed(build_J(n), {2}, sp);
    return j2 * build_S_inverse(n) * j2;
}

bool check_qybe(const SuperOp& s) {
    if (s.arity() != 2) throw DimensionMismatch("check_qybe: expected a 2-factor operator");
    const Space A = s.dims()[0].row, B = s.dims()[1].row;
    if (s.dims()[0].col != A || s.dims()[1].col != B || A != B)
        throw DimensionMismatch("check_qybe: expected equal square factors");
    const std::vector<Space> sp{A, A, A};
    SuperOp s12 = embed(s, {1, 2}, sp), s13 = embed(s, {1, 3}, sp), s23 = embed(s, {2, 3}, sp);
    return s12 * s13 * s23 == s23 * s13 * s12;
}

}  // namespace qqinv
