#include "qqinv/driver.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "qqinv/actions.hpp"
#include "qqinv/howe.hpp"
#include "qqinv/invariants.hpp"
#include "qqinv/relset.hpp"
#include "qqinv/supertensor.hpp"

namespace qqinv {

namespace {

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

/// Folds the status of one check into a running status.
void merge(std::string& into, const std::string& s) {
    if (s == "fail" || into == "fail") into = "fail";
    else if (s == "skipped" || into == "skipped") into = "skipped";
}

Json skipped(const ResourceGuard& e) {
    Json j;
    j["status"] = "skipped";
    j["reason"] = e.what();
    return j;
}

/// Runs one check; a resource guard turns it into a skipped entry.
void guarded(Json& parent, const std::string& key, std::string& status, const std::function<Json()>& fn) {
    try {
        Json j = fn();
        merge(status, j.value("status", "pass"));
        parent[key] = std::move(j);
    } catch (const ResourceGuard& e) {
        merge(status, "skipped");
        parent[key] = skipped(e);
    }
}

Json with_status(const std::string& status, const Json& body) {
    Json out;
    out["status"] = status;
    for (const auto& [k, v] : body.items()) out[k] = v;
    return out;
}

std::vector<std::pair<int, int>> bidegrees_up_to(int total_min, int total_max) {
    std::vector<std::pair<int, int>> out;
    for (int t = total_min; t <= total_max; ++t)
        for (int dt = t; dt >= 0; --dt) out.emplace_back(dt, t - dt);
    return out;
}

struct Context {
    const RunConfig& cfg;
    GradedOptions opt;
    GenSet g;
};

Json suite_matrices(Context& cx) {
    Json j;
    std::string status = "pass";
    std::set<int> sizes{cx.cfg.n, cx.cfg.s};
    Json rows = Json::array();
    bool qybe_all = true, inverse_all = true;
    for (int m : sizes) {
        const SuperOp S = build_S(m);
        const bool qybe = check_qybe(S);
        const bool inv = S * build_S_inverse(m) == SuperOp::identity({Space::full(m), Space::full(m)});
        Json e;
        e["size"] = m;
        e["terms"] = S.size();
        e["qybe"] = verdict(qybe);
        e["inverse"] = verdict(inv);
        rows.push_back(e);
        qybe_all = qybe_all && qybe;
        inverse_all = inverse_all && inv;
    }
    const bool r_qybe = check_qybe(build_R(cx.cfg.r));
    merge(status, verdict(qybe_all && inverse_all && r_qybe));
    j["status"] = status;
    j["qybe"] = verdict(qybe_all);
    j["inverse"] = verdict(inverse_all);
    j["R_qybe"] = verdict(r_qybe);
    j["S"] = rows;
    return j;
}

Json suite_presentations(Context& cx) {
    const GenSet& g = cx.g;
    Json j;
    const bool unfolded = relations_A_unfolded_equivalence(cx.cfg.r, cx.cfg.n);
    const bool a_matrix = same_span(relations_A_matrix(g), relations_A(g));
    const bool a_full = same_span(relations_A_full_matrix(g), relations_A(g));
    const bool cross_matrix = same_span(relations_cross_matrix(g), relations_cross(g));
    const bool cross_rows = span_contains(relations_cross(g, +1), relations_cross(g, -1));
    const bool alternative = relations_cross_alternative_equivalence(cx.cfg.r, cx.cfg.s, cx.cfg.n);
    const bool ok = unfolded && a_matrix && a_full && cross_matrix && cross_rows && alternative;
    j["status"] = verdict(ok);
    j["unfolded_equivalence"] = verdict(unfolded);
    j["A_matrix_form"] = verdict(a_matrix && a_full);
    j["cross_matrix_form"] = verdict(cross_matrix);
    j["cross_negative_rows"] = verdict(cross_rows);
    j["cross_alternative"] = verdict(alternative);
    Json ranks;
    ranks["A"] = span_rank(relations_A(g));
    ranks["Abar"] = span_rank(relations_Abar(g));
    ranks["cross"] = span_rank(relations_cross(g));
    j["relation_ranks"] = ranks;
    return j;
}

Json suite_dims(Context& cx) {
    const RunConfig& cfg = cx.cfg;
    const int top = 2 * cfg.dmax;
    Json j;
    std::string status = "pass";

    auto side = [&](const char* key, const GenSet& g, const std::vector<Elem>& rels, int rows, bool bar) {
        guarded(j, key, status, [&] {
            const DimsTable t = dims_table(g, rels, top, cfg.mode, cfg.seed, cx.opt);
            Json e, table = Json::array();
            bool ok = true;
            for (int d = 0; d <= top; ++d) {
                const auto k = bar ? std::make_pair(0, d) : std::make_pair(d, 0);
                const long long dim = t.dims.at(k), oracle = classical_dim(rows, cfg.n, d);
                Json row;
                row["d"] = d;
                row["words"] = t.words.at(k);
                row["dim"] = dim;
                row["oracle"] = oracle;
                table.push_back(row);
                ok = ok && dim == oracle;
            }
            e["status"] = verdict(ok);
            e["method"] = t.method;
            e["table"] = table;
            return e;
        });
    };
    side("A", GenSet(cfg.r, 0, cfg.n), relations_A(GenSet(cfg.r, 0, cfg.n)), cfg.r, false);
    side("Abar", GenSet(0, cfg.s, cfg.n), relations_Abar(GenSet(0, cfg.s, cfg.n)), cfg.s, true);

    guarded(j, "O", status, [&] {
        const DimsTable t = dims_table(cx.g, relations_all(cx.g), top, cfg.mode, cfg.seed, cx.opt);
        Json e, table = Json::array();
        bool ok = true;
        for (const auto& [k, dim] : t.dims) {
            const long long expect = classical_dim(cfg.r, cfg.n, k.first) * classical_dim(cfg.s, cfg.n, k.second);
            Json row;
            row["bidegree"] = {k.first, k.second};
            row["words"] = t.words.at(k);
            row["dim"] = dim;
            row["expected"] = expect;
            table.push_back(row);
            ok = ok && dim == expect;
        }
        e["status"] = verdict(ok);
        e["method"] = t.method;
        e["table"] = table;
        return e;
    });
    return with_status(status, j);
}

Json suite_actions(Context& cx) {
    const RunConfig& cfg = cx.cfg;
    const GenSet& g = cx.g;
    Json j;
    std::string status = "pass";
    const auto rels = relations_all(g);
    ExactAlgebra alg = make_exact(g, rels, cx.opt);
    const int top = std::min(3, 2 * cfg.dmax);

    auto family = [&](const char* key, Family f, bool skip_pure_t) {
        const ActionTable table(f, g);
        guarded(j, key, status, [&] {
            Json e, rows = Json::array();
            bool ok = true;
            std::string witness;
            for (auto [dt, db] : bidegrees_up_to(2, top)) {
                if (skip_pure_t && db == 0) continue;
                const InvarianceResult res = check_relation_invariance(alg, table, rels, dt, db);
                Json row;
                row["bidegree"] = {dt, db};
                row["checked"] = res.checked;
                row["status"] = verdict(res.ok);
                rows.push_back(row);
                if (!res.ok && witness.empty()) witness = res.witness;
                ok = ok && res.ok;
            }
            e["status"] = verdict(ok);
            e["coproduct"] = table.uses_cop() ? "opposite" : "ordinary";
            e["bidegrees"] = rows;
            if (!witness.empty()) e["witness"] = witness;
            return e;
        });
    };
    family("phi", Family::Phi, false);
    family("psibar", Family::PsiBar, true);

    guarded(j, "psi_on_A", status, [&] {
        const ActionTable psi(Family::Psi, g);
        Json e;
        bool ok = true;
        std::size_t checked = 0;
        for (int d = 2; d <= top; ++d) {
            const InvarianceResult res = check_relation_invariance(alg, psi, relations_A(g), d, 0);
            checked += res.checked;
            ok = ok && res.ok;
            if (!res.ok && !e.contains("witness")) e["witness"] = res.witness;
        }
        e["status"] = verdict(ok);
        e["checked"] = checked;
        return e;
    });

    guarded(j, "psi_defect", status, [&] {
        const DefectResult d = check_psi_defect(cfg.r, cfg.s, cfg.n);
        Json e;
        e["status"] = verdict(d.ok && d.nonzero);
        e["nonzero"] = d.nonzero;
        e["matches_formula"] = d.ok;
        e["convention"] = d.convention;
        e["cases"] = d.cases;
        e["mismatches"] = d.mismatches;
        e["matches_with_diagonal_sign"] = d.matches_with_diagonal_sign;
        e["psi_scaled_by_xi"] = d.psi_scaled_by_xi;
        if (!d.witness.empty()) e["witness"] = d.witness;
        return e;
    });
    return with_status(status, j);
}

Json suite_invariants(Context& cx) {
    Json j;
    InvariantContext ctx(cx.g, cx.opt);
    bool all_invariant = true;
    std::string witness;
    for (int i = 1; i <= cx.cfg.r; ++i)
        for (int al : Space::full(cx.cfg.s).indices())
            if (!ctx.x_invariant(i, al)) {
                all_invariant = false;
                if (witness.empty()) witness = elem_to_string(cx.g, ctx.x(i, al));
            }
    const bool product = ctx.x_matches_matrix_product();
    const XRelationResult xr = check_X_relations(ctx);
    j["status"] = verdict(all_invariant && product && xr.ok());
    j["x_invariant"] = verdict(all_invariant);
    j["x_matrix_product"] = verdict(product);
    j["XT"] = verdict(xr.xt);
    j["XbarT"] = verdict(xr.xbart);
    j["XX"] = verdict(xr.xx);
    if (!witness.empty()) j["witness"] = witness;
    else if (!xr.witness.empty()) j["witness"] = xr.witness;
    return j;
}

Json suite_fft(Context& cx) {
    Json j;
    InvariantContext ctx(cx.g, cx.opt);
    const FftReport rep = fft_check(ctx, cx.cfg.dmax);
    j["status"] = verdict(rep.ok);
    j["case"] = cx.cfg.n >= std::max(cx.cfg.r, cx.cfg.s) ? "n >= max(r,s)" : "n < max(r,s)";
    Json rows = Json::array();
    for (const FftEntry& e : rep.entries) {
        Json row;
        row["bidegree"] = {e.dt, e.db};
        row["words"] = e.words;
        row["relation_rank"] = e.relation_rank;
        row["component_dim"] = e.component_dim;
        row["invariant_dim"] = e.invariant_dim;
        if (e.x_span_dim >= 0) {
            row["x_span_dim"] = e.x_span_dim;
            row["contained"] = e.contained;
        }
        row["status"] = verdict(e.ok);
        rows.push_back(row);
    }
    j["table"] = rows;
    if (!rep.witness.empty()) j["witness"] = rep.witness;
    return j;
}

Json suite_howe(Context& cx) {
    const RunConfig& cfg = cx.cfg;
    Json j;
    std::string status = "pass";
    HoweContext h(cx.g, cx.opt);

    guarded(j, "genDelta", status, [&] {
        Json e, rows = Json::array();
        bool ok = true;
        for (int k = 1; k <= std::min(3, cfg.dmax); ++k) {
            const GenDeltaResult res = h.check_genDelta(k);
            const GenDeltaResult literal = h.check_genDelta(k, GenDeltaForm::FirstRow);
            Json row;
            row["k"] = k;
            row["entries"] = res.entries;
            row["status"] = verdict(res.ok);
            row["first_row_form"] = verdict(literal.ok);
            if (!res.ok) row["witness"] = res.witness;
            rows.push_back(row);
            ok = ok && res.ok;
        }
        e["status"] = verdict(ok);
        e["table"] = rows;
        return e;
    });

    guarded(j, "delta_mul", status, [&] {
        const DescentResult res = h.check_delta_mul_suite(cfg.delta_mul_samples, cfg.seed);
        Json e;
        e["status"] = verdict(res.ok);
        e["checked"] = res.checked;
        e["random_pairs"] = cfg.delta_mul_samples;
        if (!res.ok) e["witness"] = res.witness;
        return e;
    });

    guarded(j, "omega_descent", status, [&] {
        Json e, rows = Json::array();
        bool ok = true;
        for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {1, 2}}) {
            const DescentResult res = h.check_omega_descent(p, k);
            Json row;
            row["bidegree"] = {p, k};
            row["checked"] = res.checked;
            row["status"] = verdict(res.ok);
            if (!res.ok) row["witness"] = res.witness;
            rows.push_back(row);
            ok = ok && res.ok;
        }
        e["status"] = verdict(ok);
        e["table"] = rows;
        return e;
    });

    guarded(j, "delta_descent", status, [&] {
        Json e, rows = Json::array();
        bool ok = true;
        for (int d = 2; d <= std::max(2, cfg.dmax); ++d) {
            const DescentResult res = h.check_delta_descent(d);
            Json row;
            row["d"] = d;
            row["checked"] = res.checked;
            row["status"] = verdict(res.ok);
            if (!res.ok) row["witness"] = res.witness;
            rows.push_back(row);
            ok = ok && res.ok;
        }
        e["status"] = verdict(ok);
        e["table"] = rows;
        return e;
    });

    if (cfg.n >= std::max(cfg.r, cfg.s)) {
        guarded(j, "injectivity", status, [&] {
            Json e, rows = Json::array();
            bool ok = true;
            for (int d = 0; d <= cfg.dmax; ++d) {
                const InjectivityResult res = h.delta_injectivity(d);
                Json row;
                row["d"] = d;
                row["domain_dim"] = res.domain_dim;
                row["rank"] = res.rank;
                row["invariant_dim"] = res.invariant_dim;
                row["images_invariant"] = res.images_invariant;
                const bool row_ok = res.ok() && res.rank == res.invariant_dim;
                row["status"] = verdict(row_ok);
                rows.push_back(row);
                ok = ok && row_ok;
            }
            e["status"] = verdict(ok);
            e["table"] = rows;
            return e;
        });
    } else {
        j["injectivity"] = Json{{"status", "not_applicable"}, {"reason", "n < max(r,s)"}};
    }
    return with_status(status, j);
}

using SuiteFn = Json (*)(Context&);

SuiteFn suite_fn(const std::string& name) {
    if (name == "matrices") return suite_matrices;
    if (name == "presentations") return suite_presentations;
    if (name == "dims") return suite_dims;
    if (name == "actions") return suite_actions;
    if (name == "invariants") return suite_invariants;
    if (name == "fft") return suite_fft;
    return suite_howe;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"matrices", "presentations", "dims", "actions",
                                                "invariants", "fft", "howe"};
    return names;
}

void validate(const RunConfig& cfg) {
    auto in_range = [&](int v, const char* name) {
        if (v < 1 || v > cfg.rank_bound)
            throw ConfigError(std::string(name) + " must lie in 1.." + std::to_string(cfg.rank_bound));
    };
    in_range(cfg.r, "r");
    in_range(cfg.s, "s");
    in_range(cfg.n, "n");
    if (cfg.dmax < 0 || cfg.dmax > cfg.dmax_bound)
        throw ConfigError("dmax must lie in 0.." + std::to_string(cfg.dmax_bound));
    if (cfg.suites.empty()) throw ConfigError("no suites selected");
    for (const auto& s : cfg.suites)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw ConfigError("unknown suite: " + s);
    if (cfg.max_words <= 0) throw ConfigError("max-words must be positive");
    if (cfg.delta_mul_samples < 0) throw ConfigError("samples must be non-negative");
}

RunResult run(const RunConfig& cfg) {
    validate(cfg);
    Context cx{cfg, GradedOptions{}, GenSet(cfg.r, cfg.s, cfg.n)};
    cx.opt.max_words = cfg.max_words;
    cx.opt.cache_dir = cfg.cache_dir;

    RunResult res;
    res.status = "pass";
    Json& rep = res.report;
    rep["schema"] = kReportSchema;
    rep["tool"] = Json{{"name", "qqinv"}, {"version", kToolVersion}};
    Json config;
    config["r"] = cfg.r;
    config["s"] = cfg.s;
    config["n"] = cfg.n;
    config["dmax"] = cfg.dmax;
    config["mode"] = cfg.mode == Mode::Exact ? "exact" : "modular";
    Json suites = Json::array();
    for (const auto& s : suite_names())
        if (cfg.suites.count(s)) suites.push_back(s);
    config["suites"] = suites;
    config["seed"] = cfg.seed;
    config["max_words"] = cfg.max_words;
    rep["config"] = config;

    Json results;
    Json timings;
    for (const auto& name : suite_names()) {
        if (!cfg.suites.count(name)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Json j;
        try {
            j = suite_fn(name)(cx);
        } catch (const ResourceGuard& e) {
            j = skipped(e);
        }
        if (cfg.timings)
            timings[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        merge(res.status, j.value("status", "pass"));
        results[name] = std::move(j);
    }
    rep["suites"] = results;
    if (cfg.timings) rep["timings_seconds"] = timings;

    Json summary;
    summary["status"] = res.status;
    for (const char* k : {"pass", "fail", "skipped"}) {
        Json names = Json::array();
        for (const auto& [name, j] : results.items())
            if (j.value("status", "") == k) names.push_back(name);
        summary[k] = names;
    }
    rep["summary"] = summary;
    return res;
}

std::string render(const Json& report) { return report.dump(2) + "\n"; }

std::string render_table(const Json& report) {
    std::ostringstream os;
    std::function<void(const std::string&, const Json&)> walk = [&](const std::string& path, const Json& j) {
        if (!j.is_object()) return;
        if (j.contains("status")) os << j["status"].get<std::string>() << "\t" << path << "\n";
        for (const auto& [k, v] : j.items())
            if (v.is_object()) walk(path + "/" + k, v);
    };
    for (const auto& [name, j] : report["suites"].items()) walk(name, j);
    os << "overall\t" << report["summary"]["status"].get<std::string>() << "\n";
    return os.str();
}

}  // namespace qqinv
