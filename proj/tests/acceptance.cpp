// One line per acceptance criterion; exit status 1 when any fails.

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "qqinv/actions.hpp"
#include "qqinv/driver.hpp"
#include "qqinv/howe.hpp"
#include "qqinv/invariants.hpp"
#include "qqinv/relset.hpp"
#include "qqinv/supertensor.hpp"

using namespace qqinv;

namespace {

using Grid = std::vector<std::tuple<int, int, int>>;
const Grid kGrid{{1, 1, 1}, {1, 1, 2}, {2, 1, 1}, {1, 2, 1}, {2, 2, 1}, {2, 2, 2}};

std::string point(int r, int s, int n) {
    return "(" + std::to_string(r) + "," + std::to_string(s) + "," + std::to_string(n) + ")";
}

// Monomials of degree d in m even and m odd commuting variables, odd ones
// squaring to zero, counted by enumerating exponent vectors.
long long brute_dim(int m, int d) {
    long long count = 0;
    std::vector<int> e(2 * m, 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
        if (k == 2 * m) {
            if (left == 0) ++count;
            return;
        }
        const int cap = k < m ? left : std::min(left, 1);
        for (int v = 0; v <= cap; ++v) rec(k + 1, left - v);
    };
    rec(0, d);
    return count;
}

struct Outcome {
    bool ok = true;
    std::ostringstream note;
    void fail(const std::string& why) {
        if (ok) note << why;
        ok = false;
    }
};

Outcome qybe() {
    Outcome o;
    for (int n = 1; n <= 3; ++n) {
        const SuperOp S = build_S(n);
        if (!check_qybe(S)) o.fail("QYBE fails at n=" + std::to_string(n));
        if (!(S * build_S_inverse(n) == SuperOp::identity({Space::full(n), Space::full(n)})))
            o.fail("S S^-1 != 1 at n=" + std::to_string(n));
    }
    if (o.ok) o.note << "n = 1, 2, 3";
    return o;
}

Outcome presentation() {
    Outcome o;
    for (auto [r, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}})
        if (!relations_A_unfolded_equivalence(r, n)) o.fail("(r,n)=(" + std::to_string(r) + "," + std::to_string(n) + ")");
    if (o.ok) o.note << "(r,n) in {(1,1),(2,1),(1,2),(2,2)}";
    return o;
}

Outcome classical_dims() {
    Outcome o;
    std::vector<int> a11;
    for (auto [r, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
        const DimsTable a = dims_table(GenSet(r, 0, n), relations_A(GenSet(r, 0, n)), 4, Mode::Exact);
        const DimsTable b = dims_table(GenSet(0, r, n), relations_Abar(GenSet(0, r, n)), 4, Mode::Exact);
        for (int d = 0; d <= 4; ++d) {
            const long long want = brute_dim(r * n, d);
            if (a.dims.at({d, 0}) != want)
                o.fail("A_{" + std::to_string(r) + "," + std::to_string(n) + "} degree " + std::to_string(d));
            if (b.dims.at({0, d}) != want)
                o.fail("Abar_{" + std::to_string(r) + "," + std::to_string(n) + "} degree " + std::to_string(d));
            if (r == 1 && n == 1) a11.push_back(a.dims.at({d, 0}));
        }
    }
    if (o.ok) {
        o.note << "A_{1,1}:";
        for (int v : a11) o.note << ' ' << v;
    }
    return o;
}

Outcome flatness() {
    Outcome o;
    for (auto [r, s, n] : kGrid) {
        const GenSet g(r, s, n);
        const DimsTable t = dims_table(g, relations_all(g), 4, Mode::Exact);
        const DimsTable a = dims_table(GenSet(r, 0, n), relations_A(GenSet(r, 0, n)), 4, Mode::Exact);
        const DimsTable b = dims_table(GenSet(0, s, n), relations_Abar(GenSet(0, s, n)), 4, Mode::Exact);
        for (const auto& [k, dim] : t.dims)
            if (dim != a.dims.at({k.first, 0}) * b.dims.at({0, k.second}))
                o.fail(point(r, s, n) + " bidegree (" + std::to_string(k.first) + "," + std::to_string(k.second) + ")");
    }
    if (o.ok) o.note << "6 grid points, d1+d2 <= 4";
    return o;
}

Outcome equivariance() {
    Outcome o;
    std::size_t checked = 0;
    for (auto [r, s, n] : kGrid) {
        const GenSet g(r, s, n);
        const auto rels = relations_all(g);
        ExactAlgebra alg = make_exact(g, rels);
        const ActionTable phi(Family::Phi, g), psibar(Family::PsiBar, g);
        for (int total = 2; total <= 3; ++total)
            for (int dt = total; dt >= 0; --dt) {
                const int db = total - dt;
                InvarianceResult res = check_relation_invariance(alg, phi, rels, dt, db);
                checked += res.checked;
                if (!res.ok) o.fail("Phi at " + point(r, s, n) + ": " + res.witness);
                if (db == 0) continue;
                res = check_relation_invariance(alg, psibar, rels, dt, db);
                checked += res.checked;
                if (!res.ok) o.fail("Psibar at " + point(r, s, n) + ": " + res.witness);
            }
    }
    if (o.ok) o.note << checked << " relation contexts";
    return o;
}

Outcome psi_defect() {
    Outcome o;
    for (auto [r, s, n] : Grid{{1, 1, 1}, {2, 1, 1}}) {
        const DefectResult d = check_psi_defect(r, s, n);
        if (!d.nonzero) o.fail("defect vanishes at " + point(r, s, n));
        if (!d.ok) {
            std::ostringstream os;
            os << "defect is nonzero but differs from the closed form at " << point(r, s, n) << " in " << d.mismatches
               << "/" << d.cases << " cases (a = b < 0, opposite sign"
               << (d.matches_with_diagonal_sign ? "; matches with (-1)^|a| on the a = b branch)" : ")");
            o.fail(os.str());
        }
    }
    if (o.ok) o.note << "nonzero and equal to the closed form";
    return o;
}

Outcome x_relations() {
    Outcome o;
    for (auto [r, s, n] : Grid{{1, 1, 1}, {2, 1, 1}, {2, 2, 1}, {1, 1, 2}}) {
        InvariantContext ctx(GenSet(r, s, n));
        const XRelationResult res = check_X_relations(ctx);
        if (!res.ok()) o.fail(point(r, s, n) + ": " + res.witness);
    }
    if (o.ok) o.note << "XT, XbarT, XX at 4 grid points";
    return o;
}

Outcome fft() {
    Outcome o;
    std::vector<int> diag111;
    for (auto [r, s, n] : kGrid) {
        InvariantContext ctx(GenSet(r, s, n));
        const int dmax = (r == 1 && s == 1) ? 3 : 2;
        const FftReport rep = fft_check(ctx, dmax);
        if (!rep.ok) o.fail(point(r, s, n) + ": " + rep.witness);
        if (r == 1 && s == 1 && n == 1)
            for (const FftEntry& e : rep.entries)
                if (e.dt == e.db && e.dt <= 2) diag111.push_back(e.invariant_dim);
    }
    if (diag111 != std::vector<int>{1, 2, 2}) o.fail("diagonal invariant dims at (1,1,1) are not 1, 2, 2");
    if (o.ok) o.note << "Case 1 and Case 2; (1,1,1) diagonal 1 2 2";
    return o;
}

Outcome howe() {
    Outcome o;
    bool literal_k3 = true;
    for (auto [r, s, n] : kGrid) {
        HoweContext h(GenSet(r, s, n));
        const int kmax = (r == 1 && s == 1 && n == 1) ? 3 : 2;
        for (int k = 1; k <= kmax; ++k) {
            const GenDeltaResult res = h.check_genDelta(k);
            if (!res.ok) o.fail("genDelta k=" + std::to_string(k) + " at " + point(r, s, n) + ": " + res.witness);
        }
        if (kmax == 3) literal_k3 = h.check_genDelta(3, GenDeltaForm::FirstRow).ok;
        const DescentResult dm = h.check_delta_mul_suite(50, 1);
        if (!dm.ok) o.fail("DeltaMul at " + point(r, s, n) + ": " + dm.witness);
        if ((r == 1 && s == 1) || (r == 2 && s == 1) || (r == 1 && s == 2))
            for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {1, 2}}) {
                const DescentResult res = h.check_omega_descent(p, q);
                if (!res.ok) o.fail("Omega descent at " + point(r, s, n) + ": " + res.witness);
            }
        if (n >= std::max(r, s))
            for (int d = 0; d <= 2; ++d) {
                const InjectivityResult res = h.delta_injectivity(d);
                if (!res.ok() || res.rank != res.invariant_dim || res.domain_dim != brute_dim(r * s, d))
                    o.fail("injectivity d=" + std::to_string(d) + " at " + point(r, s, n));
            }
    }
    if (o.ok) {
        o.note << "S factors S^{(1,2)}S^{(2,3)}; literal S^{12}S^{13} at k=3: " << (literal_k3 ? "pass" : "fail");
    }
    return o;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome determinism() {
    Outcome o;
    RunConfig cfg;
    cfg.r = 2;
    cfg.s = 1;
    cfg.n = 1;
    cfg.suites.insert(suite_names().begin(), suite_names().end());
    if (render(run(cfg).report) != render(run(cfg).report)) o.fail("in-process reports differ");

    const std::string cli = QQINV_CLI_PATH;
    const std::string base = "/tmp/qqinv-acceptance-" + std::to_string(::getpid());
    for (int k = 1; k <= 2; ++k) {
        const std::string cmd = cli + " all --r 1 --s 1 --n 2 --seed 7 --out " + base + "-" + std::to_string(k) + ".json";
        const int rc = std::system(cmd.c_str());
        if (rc == -1) o.fail("could not run " + cli);
    }
    const std::string a = slurp(base + "-1.json"), b = slurp(base + "-2.json");
    if (a.empty() || a != b) o.fail("CLI reports differ");
    std::remove((base + "-1.json").c_str());
    std::remove((base + "-2.json").c_str());
    if (o.ok) o.note << "in-process and CLI runs byte-identical";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"QYBE and S inverse", qybe},
        {"presentation equivalence", presentation},
        {"classical dimensions", classical_dims},
        {"flatness of the braided product", flatness},
        {"action well-definedness and equivariance", equivariance},
        {"Psi defect negative control", psi_defect},
        {"X relations", x_relations},
        {"FFT", fft},
        {"Howe maps", howe},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (o.ok ? "PASS" : "FAIL") << " ("
                  << o.note.str() << ")" << std::endl;
        if (!o.ok) ++failed;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
}
