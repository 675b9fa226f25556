#ifndef MN_IBMAP_TS_HPP
#define MN_IBMAP_TS_HPP

#include <cstddef>
#include <functional>
#include <limits>

#include "mn/gsmn.hpp"

namespace mn {

/// Successor operator of the decision tree: given the decisions so far,
/// yields the next query or the finished structure.
using QueryOperator = std::function<ReplayStep(const Trace& prefix)>;

/// Pr(T = value | D) for one assertion. The production instance derives both
/// values of one triplet from a single test evaluation (p and 1 - p).
using AssertionPosterior = std::function<double(const Triplet& t, bool value)>;

/// Expansion observer, called at every non-root pop with the node's depth,
/// path cost and last decision. Used for trace dumps.
using ExpandObserver = std::function<void(std::size_t depth, double path_cost,
                                          const Triplet& t, bool value)>;

struct TsOptions {
    std::size_t node_budget = std::size_t{1} << 20; // frontier pops
    bool and_rule = false;
    ExpandObserver on_expand;
};

struct TsResult {
    bool found = false;
    Structure structure;
    Trace closure; // decision prefix of the goal; a closure of structure
    double path_cost = std::numeric_limits<double>::infinity();
    std::size_t expansions = 0;
    bool budget_exhausted = false;
};

/// Uniform-cost search over the binary tree of trust/distrust decisions.
/// Each expansion replays the prefix through the operator; a NextTriplet
/// yields two children with step costs -log Pr(T=t|D) and -log Pr(T=-t|D),
/// a Done node is a goal. Step costs are nonnegative, so the first goal
/// popped has minimal path cost. Frontier ties break on lower depth, then
/// the independent branch, then insertion order.
TsResult uniform_cost_search(const QueryOperator& op, const AssertionPosterior& posterior,
                             const TsOptions& opts = {});

/// The search bound to the grow-shrink learner's replay operator and a test
/// backend (normally cache-wrapped: both children of a triplet reuse one
/// evaluation).
TsResult ibmap_ts_search(int n, const IndependenceTest& test, const TsOptions& opts = {});

} // namespace mn

#endif
