#include "doctest.h"

#include "qqinv/invariants.hpp"

using namespace qqinv;

namespace {

// sum_k C(m,k) C(m+d-k-1, d-k): polynomials in m even and m odd variables.
long long sym_dim(int m, int d) {
    auto binom = [](long long a, long long b) {
        if (b < 0 || b > a) return 0LL;
        long long c = 1;
        for (long long j = 1; j <= b; ++j) c = c * (a - b + j) / j;
        return c;
    };
    long long total = 0;
    for (int k = 0; k <= d; ++k) total += binom(m, k) * (d - k == 0 ? 1 : binom(m + d - k - 1, d - k));
    return total;
}

}  // namespace

TEST_CASE("x elements at (1,1,1)") {
    GenSet g(1, 1, 1);
    InvariantContext ctx(g);
    Elem expect = elem_word(Word{g.t(1, -1), g.tb(1, -1)});
    elem_add(expect, Word{g.t(1, 1), g.tb(1, 1)}, QScalar(1));
    CHECK(ctx.x(1, 1) == expect);
    CHECK(ctx.x_matches_matrix_product());
    CHECK(ctx.x_invariant(1, 1));
    CHECK(ctx.x_invariant(1, -1));
}

TEST_CASE("every x is invariant across the grid") {
    for (auto [r, s, n] : std::vector<std::tuple<int, int, int>>{{2, 1, 1}, {1, 2, 2}, {2, 2, 1}}) {
        InvariantContext ctx(GenSet(r, s, n));
        CHECK(ctx.x_matches_matrix_product());
        for (int i = 1; i <= r; ++i)
            for (int al : Space::full(s).indices()) CHECK(ctx.x_invariant(i, al));
    }
}

TEST_CASE("invariant subspaces at (1,1,1)") {
    InvariantContext ctx(GenSet(1, 1, 1));
    CHECK(ctx.invariant_subspace(0, 0).dim() == 1);
    CHECK(ctx.invariant_subspace(1, 0).dim() == 0);
    CHECK(ctx.invariant_subspace(2, 1).dim() == 0);
    Subspace inv = ctx.invariant_subspace(1, 1);
    CHECK(inv.dim() == 2);
    CHECK(inv.contains(ctx.algebra().coords(1, 1, ctx.x(1, 1))));
    CHECK(inv.contains(ctx.algebra().coords(1, 1, ctx.x(1, -1))));
    CHECK(ctx.x_span(0).dim() == 1);
    CHECK(ctx.x_span(1).dim() == 2);
    CHECK(ctx.x_span(2).dim() == ctx.invariant_subspace(2, 2).dim());
}

TEST_CASE("invariants form a subalgebra") {
    InvariantContext ctx(GenSet(1, 1, 2));
    ExactAlgebra& alg = ctx.algebra();
    Subspace one = ctx.invariant_subspace(1, 1), two = ctx.invariant_subspace(2, 2);
    for (const auto& u : one.vectors)
        for (const auto& v : one.vectors)
            CHECK(two.contains(alg.coords(2, 2, alg.multiply(alg.from_coords(1, 1, u), alg.from_coords(1, 1, v)))));
}

TEST_CASE("fft at (1,1,1) and (2,1,1)") {
    InvariantContext a(GenSet(1, 1, 1));
    FftReport rep = fft_check(a, 2);
    CHECK(rep.ok);
    std::vector<int> diag;
    for (const auto& e : rep.entries) {
        if (e.dt == e.db) diag.push_back(e.invariant_dim);
        else CHECK(e.invariant_dim == 0);
    }
    CHECK(diag == std::vector<int>{1, 2, 2});

    InvariantContext b(GenSet(2, 1, 1));
    CHECK(fft_check(b, 2).ok);
}

TEST_CASE("invariant dimensions match A_{r,s} when n >= max(r,s)") {
    for (auto [r, s, n] : std::vector<std::tuple<int, int, int>>{{1, 1, 2}, {1, 1, 1}}) {
        InvariantContext ctx(GenSet(r, s, n));
        for (int d = 0; d <= 2; ++d) CHECK(ctx.invariant_subspace(d, d).dim() == sym_dim(r * s, d));
    }
}

TEST_CASE("X relations") {
    for (auto [r, s, n] : std::vector<std::tuple<int, int, int>>{{1, 1, 1}, {2, 1, 1}, {1, 1, 2}}) {
        InvariantContext ctx(GenSet(r, s, n));
        XRelationResult res = check_X_relations(ctx);
        CHECK(res.xt);
        CHECK(res.xbart);
        CHECK(res.xx);
        CHECK(res.witness.empty());
    }
}
