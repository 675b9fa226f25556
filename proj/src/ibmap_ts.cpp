#include "mn/ibmap_ts.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace mn {

namespace {

struct Node {
    int parent; // -1 for children of the root
    TraceEntry entry;
    double path_cost;
    std::size_t depth;
};

struct FrontierItem {
    double path_cost;
    std::size_t depth;
    bool independent;
    std::size_t seq;
    int node; // index into the arena, -2 for the root itself

    bool operator>(const FrontierItem& other) const {
        if (path_cost != other.path_cost)
            return path_cost > other.path_cost;
        if (depth != other.depth)
            return depth > other.depth;
        if (independent != other.independent)
            return !independent; // independent branch first
        return seq > other.seq;
    }
};

Trace prefix_of(const std::vector<Node>& arena, int node) {
    Trace prefix;
    for (int i = node; i >= 0; i = arena[i].parent)
        prefix.push_back(arena[i].entry);
    std::reverse(prefix.begin(), prefix.end());
    return prefix;
}

} // namespace

TsResult uniform_cost_search(const QueryOperator& op, const AssertionPosterior& posterior,
                             const TsOptions& opts) {
    std::vector<Node> arena;
    std::priority_queue<FrontierItem, std::vector<FrontierItem>, std::greater<FrontierItem>>
        frontier;
    std::size_t seq = 0;
    frontier.push(FrontierItem{0.0, 0, true, seq++, -2});

    TsResult result;
    while (!frontier.empty()) {
        const FrontierItem item = frontier.top();
        frontier.pop();
        if (result.expansions >= opts.node_budget) {
            result.budget_exhausted = true;
            return result;
        }
        ++result.expansions;

        Trace prefix = item.node == -2 ? Trace{} : prefix_of(arena, item.node);
        if (item.node != -2 && opts.on_expand)
            opts.on_expand(item.depth, item.path_cost, prefix.back().triplet,
                           prefix.back().independent);

        ReplayStep step = op(prefix);
        if (step.done) {
            result.found = true;
            result.structure = std::move(*step.done);
            result.closure = std::move(prefix);
            result.path_cost = item.path_cost;
            return result;
        }

        const Triplet& t = *step.next;
        for (bool value : {true, false}) {
            const double p = posterior(t, value);
            const double cost = item.path_cost - std::log(p);
            arena.push_back(Node{item.node == -2 ? -1 : item.node,
                                 TraceEntry{t, value}, cost, item.depth + 1});
            frontier.push(FrontierItem{cost, item.depth + 1, value, seq++,
                                       static_cast<int>(arena.size()) - 1});
        }
    }
    return result; // frontier exhausted without a goal (cannot happen for
                   // terminating operators, kept for totality)
}

TsResult ibmap_ts_search(int n, const IndependenceTest& test, const TsOptions& opts) {
    QueryOperator op = [n, &opts](const Trace& prefix) {
        return next_query(n, prefix, opts.and_rule);
    };
    AssertionPosterior posterior = [&test](const Triplet& t, bool value) {
        const Judgment j = test.evaluate(t);
        return value ? j.posterior_independent : 1.0 - j.posterior_independent;
    };
    return uniform_cost_search(op, posterior, opts);
}

} // namespace mn
