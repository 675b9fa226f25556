#include "mn/ibmap_hc.hpp"

#include <stdexcept>

#include "mn/gsmn.hpp"

namespace mn {

HcResult ibmap_hc_search(int n, const IndependenceTest& test, const HcOptions& opts) {
    Structure start = opts.start ? *opts.start : gsmn_learn(n, test, opts.and_rule).structure;
    if (start.node_count() != n)
        throw std::invalid_argument("starting structure has the wrong node count");

    ScoreState state(std::move(start), test);
    HcResult result;
    result.start_score = state.total();
    const long max_iters = opts.max_iters >= 0 ? opts.max_iters : 10L * n;

    for (;;) {
        int best_x = -1, best_y = -1;
        double best_score = state.total() + opts.min_delta;
        for (int x = 0; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) {
                const double candidate = state.preview_flip(x, y);
                if (candidate > best_score) { // strict: ties keep the earlier pair
                    best_score = candidate;
                    best_x = x;
                    best_y = y;
                }
            }
        }
        if (best_x < 0)
            break; // local maximum
        if (result.ascents >= max_iters) {
            result.truncated = true;
            break;
        }
        result.iteration_deltas.push_back(state.apply_flip(best_x, best_y));
        ++result.ascents;
    }

    result.structure = state.structure();
    result.log_score = state.total();
    return result;
}

} // namespace mn
