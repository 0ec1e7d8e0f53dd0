#include "doctest.h"

#include <random>

#include "qqinv/supertensor.hpp"

using namespace qqinv;

namespace {

// Independent oracle: the action of an elementary tensor on basis vectors,
// (A1⊗...⊗Ak)(v1⊗...⊗vk) = (-1)^{sum_{l<m} |A_m||v_l|} A1v1⊗...⊗Akvk,
// assembled into a dense matrix over the tensor basis.
using Dense = std::map<std::pair<std::vector<int>, std::vector<int>>, QScalar>;

Dense dense_action(const SuperOp& a) {
    Dense out;
    const int k = a.arity();
    for (const auto& [key, c] : a.terms()) {
        std::vector<int> in(k), res(k);
        int sign = 0, pv = 0;
        for (int m = 0; m < k; ++m) {
            in[m] = key[2 * m + 1];
            res[m] = key[2 * m];
            int pa = parity(key[2 * m]) ^ parity(key[2 * m + 1]);
            sign ^= pa & pv;
            pv ^= parity(in[m]);
        }
        QScalar v = sign ? -c : c;
        out[{res, in}] += v;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

Dense dense_mul(const Dense& a, const Dense& b) {
    Dense out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b)
            if (ka.second == kb.first) out[{ka.first, kb.second}] += ca * cb;
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

SuperOp random_op(std::mt19937_64& rng, int n, int k, bool even) {
    const Space V = Space::full(n);
    std::vector<FactorDims> dims(k, FactorDims{V, V});
    SuperOp out(dims);
    auto idx = V.indices();
    std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int t = 0; t < 6; ++t) {
        MultiIndex key(2 * k);
        for (auto& x : key) x = idx[pick(rng)];
        if (even && term_parity(key) != 0) continue;
        out.add(key, QScalar(coef(rng)) * QScalar::q_pow(coef(rng)));
    }
    return out;
}

}  // namespace

TEST_CASE("S for n = 1 term by term") {
    SuperOp s = build_S(1);
    const QScalar q = QScalar::q(), qi = QScalar::q_pow(-1), x = QScalar::xi();
    CHECK(s.coeff({1, 1, 1, 1}) == q);
    CHECK(s.coeff({1, 1, -1, -1}) == qi);
    CHECK(s.coeff({-1, -1, 1, 1}) == q);
    CHECK(s.coeff({-1, -1, -1, -1}) == qi);
    CHECK(s.coeff({1, -1, -1, 1}) == -x);
    CHECK(s.coeff({-1, 1, -1, 1}) == -x);
    CHECK(s.size() == 6);
    CHECK(s.is_even());
}

TEST_CASE("S pattern for larger n") {
    for (int n = 1; n <= 3; ++n) {
        SuperOp s = build_S(n);
        CHECK(s.coeff({n, n, n, n}) == QScalar::q());
        if (n >= 2) {
            CHECK(s.coeff({1, 2, 2, 1}).is_zero());
            CHECK(s.coeff({2, 1, 1, 2}) == QScalar::xi());
        }
        CHECK(build_S_inverse(n).coeff({1, 1, 1, 1}) == QScalar::q_pow(-1));
    }
}

TEST_CASE("S times its inverse is the identity") {
    for (int n = 1; n <= 3; ++n) {
        const Space V = Space::full(n);
        SuperOp id = SuperOp::identity({V, V});
        CHECK(build_S(n) * build_S_inverse(n) == id);
        CHECK(build_S_inverse(n) * build_S(n) == id);
        CHECK(id.size() == static_cast<std::size_t>(4 * n * n));
    }
}

TEST_CASE("quantum Yang-Baxter equation") {
    for (int n = 1; n <= 3; ++n) CHECK(check_qybe(build_S(n)));
    CHECK(check_qybe(SuperOp::identity({Space::full(2), Space::full(2)})));
    CHECK(check_qybe(build_R(2)));
}

TEST_CASE("R is the positive block of S") {
    const QScalar q = QScalar::q();
    SuperOp r1 = build_R(1);
    CHECK(r1.size() == 1);
    CHECK(r1.coeff({1, 1, 1, 1}) == q);
    SuperOp r2 = build_R(2);
    CHECK(r2.size() == 5);
    CHECK(r2.coeff({1, 1, 1, 1}) == q);
    CHECK(r2.coeff({1, 1, 2, 2}) == QScalar(1));
    CHECK(r2.coeff({2, 2, 1, 1}) == QScalar(1));
    CHECK(r2.coeff({2, 2, 2, 2}) == q);
    CHECK(r2.coeff({2, 1, 1, 2}) == QScalar::xi());
    CHECK(r2.dims()[0].row == Space::positive(2));
}

TEST_CASE("Koszul sign of a single odd-odd product") {
    const Space V = Space::full(1);
    SuperOp a({{V, V}, {V, V}}), b({{V, V}, {V, V}});
    a.add({1, -1, -1, 1}, QScalar(1));
    b.add({-1, 1, 1, -1}, QScalar(1));
    SuperOp ab = a * b;
    CHECK(ab.size() == 1);
    CHECK(ab.coeff({1, 1, -1, -1}) == QScalar(-1));
    CHECK(dense_action(ab) == dense_mul(dense_action(a), dense_action(b)));
}

TEST_CASE("op_mul agrees with the vector-action oracle") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; ++t) {
        int k = 1 + t % 3;
        SuperOp a = random_op(rng, 2, k, false), b = random_op(rng, 2, k, false);
        CHECK(dense_action(a * b) == dense_mul(dense_action(a), dense_action(b)));
    }
    CHECK(dense_action(build_S(2) * build_P(2)) == dense_mul(dense_action(build_S(2)), dense_action(build_P(2))));
}

TEST_CASE("op_mul is associative and has a unit") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
        int k = 2 + t % 2;
        SuperOp a = random_op(rng, 2, k, true), b = random_op(rng, 2, k, true), c = random_op(rng, 2, k, true);
        CHECK((a * b) * c == a * (b * c));
        SuperOp id = SuperOp::identity(std::vector<Space>(k, Space::full(2)));
        CHECK(id * a == a);
        CHECK(a * id == a);
    }
}

TEST_CASE("dimension mismatch is an error") {
    CHECK_THROWS_AS((void)(build_S(1) * build_S(2)), DimensionMismatch);
    CHECK_THROWS_AS((void)(build_S(1) * build_J(1)), DimensionMismatch);
    CHECK_THROWS_AS((void)embed(build_S(1), {1, 4}, std::vector<Space>(3, Space::full(1))), std::out_of_range);
}

TEST_CASE("embedding") {
    const Space V = Space::full(2);
    CHECK(embed(build_S(2), {1, 2}, {V, V}) == build_S(2));
    const SuperOp s2 = build_S(2);
    SuperOp s13 = embed(s2, {1, 3}, {V, V, V});
    for (const auto& [k, c] : s2.terms())
        for (int j : V.indices()) CHECK(s13.coeff({k[0], k[1], j, j, k[2], k[3]}) == c);
    CHECK(s13.size() == build_S(2).size() * 4);
    CHECK(embed(SuperOp::identity({V}), {2}, {V, V, V}) == SuperOp::identity({V, V, V}));
}

TEST_CASE("P is an involution and S^T = PSP") {
    for (int n = 1; n <= 3; ++n) {
        const Space V = Space::full(n);
        SuperOp p = build_P(n);
        CHECK(p * p == SuperOp::identity({V, V}));
        SuperOp st = p * build_S(n) * p;
        CHECK(st.is_even());
        // S^T permutes the two tensor factors of each term, with a Koszul sign
        const SuperOp sn = build_S(n);
        for (const auto& [k, c] : sn.terms()) {
            int sign = (parity(k[0]) ^ parity(k[1])) & (parity(k[2]) ^ parity(k[3]));
            CHECK(st.coeff({k[2], k[3], k[0], k[1]}) == (sign ? -c : c));
        }
    }
    // P swaps basis vectors with a sign on odd-odd pairs
    Dense pd = dense_action(build_P(1));
    CHECK(pd[{{-1, -1}, {-1, -1}}] == QScalar(-1));
    CHECK(pd[{{1, -1}, {-1, 1}}] == QScalar(1));
}

TEST_CASE("J is odd, squares to minus one, and commutes with S in the first factor") {
    for (int n = 1; n <= 3; ++n) {
        const Space V = Space::full(n);
        SuperOp j = build_J(n);
        CHECK(j.parity() == 1);
        CHECK(j * j == SuperOp::identity(V).scaled(QScalar(-1)));
        SuperOp j1 = embed(j, {1}, {V, V});
        CHECK(j1 * build_S(n) == build_S(n) * j1);
        CHECK(build_S_prime(n) * build_S_prime_inverse(n) == SuperOp::identity({V, V}));
        CHECK(build_S_prime(n).is_even());
    }
}

TEST_CASE("D and S tilde") {
    SuperOp d = build_D(1);
    CHECK(d.coeff({1, 1}) == QScalar::q_pow(2));
    // q^{2(-1)^{|a|} a} at a = -1 is q^{2}
    CHECK(d.coeff({-1, -1}) == QScalar::q_pow(2));
    CHECK(build_D(2).coeff({-2, -2}) == QScalar::q_pow(4));
    for (int s = 1; s <= 3; ++s) {
        const Space V = Space::full(s);
        SuperOp st = build_S_tilde(s);
        SuperOp d2 = embed(build_D(s), {2}, {V, V}), d2i = embed(build_D_inverse(s), {2}, {V, V});
        CHECK(st == d2 * build_S(s) * d2i);
        CHECK(d2i * st * d2 == build_S(s));
        CHECK(st.is_even());
        SuperOp dd = embed(build_D(s), {1}, {V, V}) * d2;
        CHECK(dd * build_S(s) == build_S(s) * dd);
    }
}

TEST_CASE("all constructors except J are even") {
    for (int n = 1; n <= 3; ++n) {
        CHECK(build_S(n).is_even());
        CHECK(build_S_inverse(n).is_even());
        CHECK(build_R(n).is_even());
        CHECK(build_R_prime(n).is_even());
        CHECK(build_P(n).is_even());
        CHECK(build_D(n).is_even());
        CHECK(build_S_tilde(n).is_even());
    }
}

TEST_CASE("debug dump") {
    std::string d = build_R(1).dump();
    CHECK(d == "(1*q^1)/(1*q^0) · E_{1,1}⊗E_{1,1}\n");
}
