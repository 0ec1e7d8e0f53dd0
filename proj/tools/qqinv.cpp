// Command-line driver. Exit codes: 0 all pass, 1 a check failed,
// 2 usage or configuration error, 3 some checks skipped by the resource guard.

#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "qqinv/driver.hpp"

using namespace qqinv;

namespace {

const std::map<std::string, std::vector<std::string>> kSubcommands{
    {"verify-matrices", {"matrices"}},
    {"verify-presentations", {"presentations"}},
    {"dims", {"dims"}},
    {"verify-actions", {"actions"}},
    {"fft", {"invariants", "fft"}},
    {"howe", {"howe"}},
    {"all", {}},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of quantum queer coordinate superalgebras and their invariants"};
    app.require_subcommand(1, 1);

    RunConfig cfg;
    cfg.cache_dir = cache_dir_from_env();
    std::string mode = "exact";
    std::vector<std::string> suites;
    bool suites_given = false;
    bool table = false;

    auto add_flags = [&](CLI::App* sub) {
        sub->add_option("--r", cfg.r, "rows of T (A side)")->capture_default_str();
        sub->add_option("--s", cfg.s, "rows of Tbar (barred side)")->capture_default_str();
        sub->add_option("--n", cfg.n, "rank of the quantum group")->capture_default_str();
        sub->add_option("--dmax", cfg.dmax, "maximal degree")->capture_default_str();
        sub->add_option("--mode", mode, "exact or modular (dims only)")
            ->check(CLI::IsMember({"exact", "modular"}))
            ->capture_default_str();
        sub->add_option("--suites", suites, "comma-separated subset of the suites")
            ->delimiter(',')
            ->expected(0, -1);
        sub->add_option("--cache-dir", cfg.cache_dir, "component cache (default $QQINV_CACHE_DIR)");
        sub->add_option("--out", cfg.out, "report path (default stdout)");
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
        sub->add_option("--max-words", cfg.max_words, "word ceiling per component")->capture_default_str();
        sub->add_option("--bound", cfg.rank_bound, "upper bound for r, s, n")->capture_default_str();
        sub->add_option("--samples", cfg.delta_mul_samples, "random (2,1) pairs for the product check")
            ->capture_default_str();
        sub->add_flag("--timings", cfg.timings, "add wall-clock timings (breaks byte identity)");
        sub->add_flag("--table", table, "print a status table to stderr");
    };
    for (const auto& [name, _] : kSubcommands) add_flags(app.add_subcommand(name, "run " + name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    const std::string chosen = app.get_subcommands().front()->get_name();
    const auto& defaults = kSubcommands.at(chosen);
    cfg.mode = mode == "modular" ? Mode::Modular : Mode::Exact;
    if (app.get_subcommands().front()->count("--suites") > 0) {
        for (const auto& s : suites)
            if (!s.empty()) cfg.suites.insert(s);
        suites_given = true;
    }
    if (!suites_given) {
        if (defaults.empty()) cfg.suites.insert(suite_names().begin(), suite_names().end());
        else cfg.suites.insert(defaults.begin(), defaults.end());
    }

    RunResult res;
    try {
        res = run(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    const std::string text = render(res.report);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << cfg.out << "\n";
            return 2;
        }
        out << text;
    }
    if (table) std::cerr << render_table(res.report);
    return res.exit_code();
}
