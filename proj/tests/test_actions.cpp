#include "doctest.h"

#include <random>

#include "qqinv/actions.hpp"
#include "qqinv/relset.hpp"

using namespace qqinv;

namespace {

const QScalar q = QScalar::q(), xi = QScalar::xi();

Elem gen(char id, const QScalar& c = QScalar(1)) { return elem_word(Word(1, id), c); }

}  // namespace

TEST_CASE("generator images for n = 1") {
    GenSet g(1, 0, 1);
    ActionTable phi(Family::Phi, g);
    CHECK(phi.generators().size() == 3);
    CHECK(phi.image({1, 1}, g.t(1, 1)) == gen(g.t(1, 1), q));
    CHECK(phi.image({1, 1}, g.t(1, -1)) == gen(g.t(1, -1), q));
    CHECK(phi.act_word({1, 1}, Word()) == elem_word(Word()));
    CHECK(phi.act_word({-1, 1}, Word()).empty());
    CHECK(phi.act_word({1, 1}, Word{g.t(1, 1)}) == phi.image({1, 1}, g.t(1, 1)));
    CHECK(phi.act_word({1, 1}, Word{g.t(1, 1), g.t(1, 1)}) == elem_word(Word{g.t(1, 1), g.t(1, 1)}, q * q));
}

TEST_CASE("image parity is generator parity plus L parity") {
    for (auto [r, s, n] : std::vector<std::tuple<int, int, int>>{{1, 1, 1}, {2, 1, 2}, {1, 2, 2}}) {
        GenSet g(r, s, n);
        for (Family f : {Family::Phi, Family::Psi, Family::PsiBar}) {
            ActionTable t(f, g);
            for (const LieGen& L : t.generators())
                for (int id = 0; id < g.size(); ++id) {
                    Elem img = t.image(L, static_cast<char>(id));
                    if (img.empty()) continue;
                    CHECK(elem_parity(g, img) == (g.parity(static_cast<char>(id)) ^ L.parity()));
                }
        }
    }
}

TEST_CASE("untouched generators see the counit") {
    GenSet g(1, 1, 1);
    ActionTable psi(Family::Psi, g), psibar(Family::PsiBar, g);
    CHECK(psi.image({1, 1}, g.tb(1, 1)) == gen(g.tb(1, 1)));
    CHECK(psi.image({-1, 1}, g.tb(1, 1)).empty());
    CHECK(psibar.image({1, 1}, g.t(1, -1)) == gen(g.t(1, -1)));
    CHECK(psibar.image({-1, -1}, g.t(1, -1)) == gen(g.t(1, -1)));
    CHECK(psibar.image({-1, 1}, g.t(1, -1)).empty());
}

TEST_CASE("operator matrices") {
    GenSet g(1, 0, 1);
    ExactAlgebra alg = make_exact(g, relations_all(g));
    ActionTable phi(Family::Phi, g);
    auto m0 = operator_matrix(alg, phi, {1, 1}, 0, 0);
    REQUIRE(m0.size() == 1);
    CHECK(m0[0] == SparseVec<QScalar>{{0, QScalar(1)}});
    auto m1 = operator_matrix(alg, phi, {1, 1}, 1, 0);
    REQUIRE(m1.size() == 2);
    CHECK(m1[0] == SparseVec<QScalar>{{0, q}});
    CHECK(m1[1] == SparseVec<QScalar>{{1, q}});
    // the odd generator swaps parity inside degree 2
    GenSet g2(1, 1, 1);
    ExactAlgebra alg2 = make_exact(g2, relations_all(g2));
    ActionTable phi2(Family::Phi, g2);
    const auto& basis = alg2.component(1, 1).basis;
    auto odd = operator_matrix(alg2, phi2, {-1, 1}, 1, 1);
    for (std::size_t c = 0; c < odd.size(); ++c)
        for (const auto& [row, v] : odd[c]) CHECK(g2.word_parity(basis[row]) != g2.word_parity(basis[c]));
}

TEST_CASE("relation invariance") {
    for (auto [r, s, n] : std::vector<std::tuple<int, int, int>>{{1, 1, 1}, {1, 1, 2}, {2, 1, 1}}) {
        CAPTURE(r);
        CAPTURE(s);
        CAPTURE(n);
        GenSet g(r, s, n);
        auto rels = relations_all(g);
        ExactAlgebra alg = make_exact(g, rels);
        ActionTable phi(Family::Phi, g), psi(Family::Psi, g), psibar(Family::PsiBar, g);
        for (auto [dt, db] : std::vector<std::pair<int, int>>{{2, 0}, {0, 2}, {1, 1}, {2, 1}}) {
            CHECK(check_relation_invariance(alg, phi, rels, dt, db).ok);
            CHECK(check_relation_invariance(alg, psibar, rels, dt, db).ok);
        }
        CHECK(check_relation_invariance(alg, psi, relations_A(g), 2, 0).ok);
        CHECK(check_relation_invariance(alg, psi, relations_A(g), 3, 0).ok);
        CHECK_FALSE(check_relation_invariance(alg, psi, rels, 1, 1).ok);
    }
}

TEST_CASE("psibar needs the opposite coproduct") {
    GenSet g(1, 1, 1);
    auto rels = relations_all(g);
    ExactAlgebra alg = make_exact(g, rels);
    ActionTable plain(Family::PsiBar, g, false);
    CHECK_FALSE(plain.uses_cop());
    CHECK_FALSE(check_relation_invariance(alg, plain, rels, 0, 2).ok);
}

TEST_CASE("actions descend to the quotient") {
    std::mt19937_64 rng(5);
    GenSet g(1, 1, 2);
    ExactAlgebra alg = make_exact(g, relations_all(g));
    ActionTable phi(Family::Phi, g), psibar(Family::PsiBar, g);
    auto words = enumerate_words(g, 2, 1);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    for (int k = 0; k < 20; ++k) {
        const Word w = words[pick(rng)];
        for (const ActionTable* t : {&phi, &psibar})
            for (const LieGen& L : t->generators())
                CHECK(alg.normal_form(t->act(L, alg.normal_form(elem_word(w)))) ==
                      alg.normal_form(t->act_word(L, w)));
    }
}

TEST_CASE("Psi defect against its closed form") {
    DefectResult d = check_psi_defect(1, 1, 1);
    CHECK(d.nonzero);
    CHECK(d.psi_scaled_by_xi);
    CHECK(d.convention == "koszul");
    CHECK(d.cases == 8);
    // only the a = b < 0 cases disagree, by a sign
    CHECK(d.mismatches == 2);
    CHECK(d.matches_with_diagonal_sign);
    CHECK_FALSE(d.ok);

    // Independent: the defect on tb_11 ⊗ t_11 for L(-1,1), from the braided rule
    // tb_11 t_11 = q^{-1} t_11 tb_11 - ξ t_{1,-1} tb_{1,-1} and
    // Psi(t_{1,a}) = ξ(-1)^{|a|} t_{1,-a}.
    GenSet g(1, 1, 1);
    ExactAlgebra alg = make_exact(g, relations_all(g));
    ActionTable psi(Family::Psi, g);
    CHECK(psi.image({-1, 1}, g.t(1, 1)) == gen(g.t(1, -1), xi));
    CHECK(psi.image({-1, 1}, g.t(1, -1)) == gen(g.t(1, 1), -xi));
    Elem left = alg.multiply(gen(g.tb(1, 1)), gen(g.t(1, -1), xi));
    Elem right = elem_word(Word{g.t(1, -1), g.tb(1, 1)}, q.inverse() * xi);
    elem_add(right, Word{g.t(1, 1), g.tb(1, -1)}, xi * xi);
    Elem defect = left;
    elem_add(defect, right, QScalar(-1));
    Elem expect = elem_word(Word{g.t(1, -1), g.tb(1, 1)}, xi * xi);
    elem_add(expect, Word{g.t(1, 1), g.tb(1, -1)}, -xi * xi);
    CHECK(alg.normal_form(defect) == expect);
}

TEST_CASE("Psi defect at (2,1,1)") {
    DefectResult d = check_psi_defect(2, 1, 1);
    CHECK(d.nonzero);
    CHECK(d.cases == 64);
    CHECK(d.mismatches == 8);
    CHECK(d.matches_with_diagonal_sign);
}
