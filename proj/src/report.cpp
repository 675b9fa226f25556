#include "mn/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mn {

TestStats stats_of(const TestCache& cache) {
    TestStats s;
    s.cache_hits = cache.hits();
    s.cache_misses = cache.misses();
    s.evaluations = s.cache_hits + s.cache_misses;
    s.distinct_tests = cache.size();
    s.cost_units = cache.cost_units();
    return s;
}

nlohmann::json RunReport::to_json() const {
    nlohmann::json j{
        {"algorithm", algorithm},
        {"n", n},
        {"N", N},
        {"log_score", log_score},
        {"log_score_display", format_score(log_score)},
        {"wall_ms", wall_ms},
        {"tests",
         {{"evaluations", tests.evaluations},
          {"cache_hits", tests.cache_hits},
          {"cache_misses", tests.cache_misses},
          {"distinct_tests", tests.distinct_tests},
          {"cost_units", tests.cost_units}}},
        {"options", options},
    };
    if (algorithm == "ibmap-hc") {
        j["ascents"] = ascents;
        j["truncated"] = truncated;
    }
    if (algorithm == "ibmap-ts") {
        j["path_cost"] = path_cost;
        j["budget_exhausted"] = budget_exhausted;
    }
    if (!extra.is_null())
        j["detail"] = extra;
    return j;
}

std::string format_score(double log_score) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", log_score);
    return buf;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

} // namespace mn
