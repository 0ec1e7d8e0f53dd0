#pragma once

// Batch verification driver: a run configuration, the suites it selects,
// and the JSON report they produce.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qqinv/graded.hpp"

namespace qqinv {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "qqinv-report/1";

/// Suites in dependency order.
const std::vector<std::string>& suite_names();

struct RunConfig {
    int r = 1, s = 1, n = 1;
    int dmax = 2;
    Mode mode = Mode::Exact;
    std::set<std::string> suites;
    std::string cache_dir;
    std::string out;
    std::uint64_t seed = 1;
    bool timings = false;
    /// Upper bound for r, s and n.
    int rank_bound = 3;
    int dmax_bound = 4;
    double max_words = 2e5;
    /// Seeded (2,1) pairs for the product check.
    int delta_mul_samples = 50;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws ConfigError.
void validate(const RunConfig& cfg);

struct RunResult {
    Json report;
    /// "pass", "fail" or "skipped".
    std::string status;
    int exit_code() const { return status == "pass" ? 0 : status == "fail" ? 1 : 3; }
};

RunResult run(const RunConfig& cfg);

/// Report serialisation used for files and golden comparisons.
std::string render(const Json& report);
/// One line per suite and check.
std::string render_table(const Json& report);

}  // namespace qqinv
