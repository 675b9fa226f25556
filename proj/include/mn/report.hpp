#ifndef MN_REPORT_HPP
#define MN_REPORT_HPP

#include <string>

#include <json.hpp>

#include "mn/citests.hpp"
#include "mn/graph.hpp"

namespace mn {

struct TestStats {
    long evaluations = 0;
    long cache_hits = 0;
    long cache_misses = 0;
    long distinct_tests = 0;
    long cost_units = 0;
};

TestStats stats_of(const TestCache& cache);

/// Everything one learning run produced: the structure, the score it
/// reached, the ascent count, the test accounting and the wall time.
struct RunReport {
    std::string algorithm;
    int n = 0;
    long N = 0;
    double log_score = 0.0;
    long ascents = 0;       // M; hill climbing only
    double path_cost = 0.0; // tree search only
    bool truncated = false;
    bool budget_exhausted = false;
    double wall_ms = 0.0;
    TestStats tests;
    nlohmann::json options; // every flag and seed the run depended on
    nlohmann::json extra;

    nlohmann::json to_json() const;
};

/// Scores print with six decimal places.
std::string format_score(double log_score);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

} // namespace mn

#endif
