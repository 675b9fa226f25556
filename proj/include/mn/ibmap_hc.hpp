#ifndef MN_IBMAP_HC_HPP
#define MN_IBMAP_HC_HPP

#include <optional>
#include <vector>

#include "mn/ibscore.hpp"

namespace mn {

struct HcOptions {
    std::optional<Structure> start; // default: the gsmn_learn output
    long max_iters = -1;            // default 10 * n
    double min_delta = 1e-9;        // strict improvement threshold
    bool and_rule = false;          // edge rule for the default start
};

struct HcResult {
    Structure structure;
    double log_score = 0.0;
    double start_score = 0.0;
    long ascents = 0; // accepted moves, M
    bool truncated = false;
    std::vector<double> iteration_deltas;
};

/// Hill climbing over edge flips maximizing the Markov-blanket-closure
/// score. Each iteration previews all n(n-1)/2 flips with incremental
/// rescoring, moves to the best strictly improving neighbor (ties broken by
/// the lowest (x, y) pair), and stops at a local maximum or after max_iters
/// accepted moves, in which case the result is flagged truncated.
HcResult ibmap_hc_search(int n, const IndependenceTest& test, const HcOptions& opts = {});

} // namespace mn

#endif
