#ifndef MN_GSMN_HPP
#define MN_GSMN_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "mn/citests.hpp"
#include "mn/graph.hpp"

namespace mn {

struct TraceEntry {
    Triplet triplet;
    bool independent;
};

/// Ordered record of the queries a run made. The query at position i is a
/// deterministic function of the decisions at positions 0..i-1, which makes
/// the trace replayable and, at completion, a closure of the returned
/// structure.
using Trace = std::vector<TraceEntry>;

struct BlanketResult {
    std::vector<int> blanket;
    Trace trace;
};

struct GsmnResult {
    Structure structure;
    Trace trace;
};

/// Grow-shrink discovery of the Markov blanket of x over n variables.
/// Grow sweeps candidates in ascending index order and admits w whenever
/// (x ; w | B) is declared dependent, repeating until a full sweep adds
/// nothing; shrink removes w whenever (x ; w | B - {w}) is declared
/// independent, until stable. Queries repeated with an identical triplet
/// reuse the first answer and are not re-emitted.
BlanketResult grow_shrink_blanket(int x, int n, const IndependenceTest& test);

/// Full structure learner: blankets for every variable in index order,
/// then an edge (x, y) wherever y is in x's blanket or x is in y's
/// (union rule; pass and_rule for the intersection variant).
GsmnResult gsmn_learn(int n, const IndependenceTest& test, bool and_rule = false);

/// Outcome of replaying a decision prefix: either the next triplet this
/// learner would test, or the finished structure once the prefix is a
/// complete closure.
struct ReplayStep {
    std::optional<Triplet> next;
    std::optional<Structure> done;
};

/// Deterministically replays the learner's control flow, substituting the
/// prefix's decisions for test calls. Throws if the prefix disagrees with
/// the replayed query sequence, identifying the position.
ReplayStep next_query(int n, std::span<const TraceEntry> prefix, bool and_rule = false);

/// One line per query: "x y | z1 z2 ... -> I|D".
void write_trace(std::ostream& out, const Trace& trace);

} // namespace mn

#endif
