#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <set>
#include <sstream>

#include "mn/eval.hpp"
#include "mn/gsmn.hpp"
#include "mn/rng.hpp"
#include "mn/synth.hpp"

using namespace mn;

namespace {

Structure path3() {
    Structure g(3);
    g.set_edge(0, 1, true);
    g.set_edge(1, 2, true);
    return g;
}

Structure random_graph(int n, double p, Rng& rng) {
    Structure g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p))
                g.set_edge(u, v, true);
    return g;
}

bool same_trace(const Trace& a, const Trace& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i].triplet == b[i].triplet) || a[i].independent != b[i].independent)
            return false;
    return true;
}

} // namespace

TEST_CASE("grow-shrink on a path recovers the middle blanket") {
    // Hand simulation with separation answers on 0-1-2, x = 1:
    // grow asks (1,0|{}) dependent -> add 0; (1,2|{0}) dependent -> add 2;
    // second sweep has no candidates; shrink keeps both.
    Structure truth = path3();
    OracleTest oracle(truth, 0.99);
    BlanketResult r = grow_shrink_blanket(1, 3, oracle);
    CHECK(r.blanket == std::vector<int>{0, 2});
    REQUIRE(r.trace.size() >= 2);
    CHECK(r.trace[0].triplet == Triplet(1, 0, {}));
    CHECK_FALSE(r.trace[0].independent);
}

TEST_CASE("grow-shrink on an isolated node asks n-1 queries") {
    Structure truth(5); // no edges
    OracleTest oracle(truth, 0.99);
    BlanketResult r = grow_shrink_blanket(2, 5, oracle);
    CHECK(r.blanket.empty());
    CHECK(r.trace.size() == 4);
    for (const TraceEntry& e : r.trace)
        CHECK(e.independent);
}

TEST_CASE("oracle blankets equal adjacency sets") {
    Rng rng(51);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = rng.uniform_int(2, 7);
        Structure truth = random_graph(n, rng.uniform_real(0.2, 0.6), rng);
        OracleTest oracle(truth, 0.99);
        for (int x = 0; x < n; ++x)
            CHECK(grow_shrink_blanket(x, n, oracle).blanket == boundary(truth, x));
    }
}

TEST_CASE("gsmn recovers sparse structures from a perfect oracle") {
    for (int seed = 0; seed < 6; ++seed) {
        for (int tau : {1, 2}) {
            Structure truth = random_structure(12, tau, 1000 + seed * 7 + tau);
            OracleTest oracle(truth, 0.99);
            GsmnResult r = gsmn_learn(12, oracle);
            CHECK(edge_hamming(r.structure, truth) == 0);
            for (const TraceEntry& e : r.trace)
                CHECK(e.independent == vertex_separated(truth, e.triplet));
        }
    }
}

TEST_CASE("empty truth learns empty") {
    Structure truth(6);
    OracleTest oracle(truth, 0.99);
    GsmnResult r = gsmn_learn(6, oracle);
    CHECK(r.structure.edge_count() == 0);
}

TEST_CASE("learning is deterministic") {
    PairwiseModel model = random_parameters(random_structure(6, 1, 61), 62);
    Dataset d = gibbs_sample(model, 300, 63, 200, 3);
    BayesianTest backend(d);
    TestCache cache;
    CachedTest test(backend, cache);
    GsmnResult a = gsmn_learn(6, test);
    GsmnResult b = gsmn_learn(6, test);
    CHECK(a.structure == b.structure);
    CHECK(same_trace(a.trace, b.trace));
}

TEST_CASE("replay fidelity over every prefix") {
    PairwiseModel model = random_parameters(random_structure(5, 1, 71), 72);
    Dataset d = gibbs_sample(model, 250, 73, 200, 3);
    BayesianTest backend(d);
    TestCache cache;
    CachedTest test(backend, cache);
    GsmnResult full = gsmn_learn(5, test);

    for (std::size_t cut = 0; cut < full.trace.size(); ++cut) {
        ReplayStep step =
            next_query(5, std::span<const TraceEntry>(full.trace.data(), cut));
        REQUIRE(step.next.has_value());
        CHECK(*step.next == full.trace[cut].triplet);
    }
    ReplayStep done = next_query(5, full.trace);
    REQUIRE(done.done.has_value());
    CHECK(*done.done == full.structure);
}

TEST_CASE("empty prefix asks the first grow query of variable 0") {
    ReplayStep step = next_query(4, {});
    REQUIRE(step.next.has_value());
    CHECK(*step.next == Triplet(0, 1, {}));
}

TEST_CASE("inconsistent prefix is rejected with its position") {
    PairwiseModel model = random_parameters(random_structure(4, 1, 81), 82);
    Dataset d = gibbs_sample(model, 200, 83, 200, 3);
    BayesianTest backend(d);
    TestCache cache;
    CachedTest test(backend, cache);
    Trace trace = gsmn_learn(4, test).trace;
    REQUIRE(trace.size() >= 2);
    // Swap in a triplet the learner would not ask at position 1.
    Trace broken = trace;
    broken[1].triplet = Triplet(broken[1].triplet.x(), broken[1].triplet.y(), {});
    if (broken[1].triplet == trace[1].triplet)
        broken[1].triplet = Triplet(0, 3, {1, 2});
    CHECK_THROWS_WITH_AS(next_query(4, broken), doctest::Contains("position 1"),
                         std::runtime_error);
}

TEST_CASE("every decision vector terminates in a closure at n = 3") {
    // Exhaustive bifurcation: extend each prefix with both decisions until
    // the replay finishes, and check the finished prefix is a closure.
    long leaves = 0;
    std::size_t deepest = 0;
    std::function<void(Trace)> explore = [&](Trace prefix) {
        REQUIRE(prefix.size() <= 64); // replay must keep terminating
        ReplayStep step = next_query(3, prefix);
        if (step.done) {
            ++leaves;
            deepest = std::max(deepest, prefix.size());
            ReplayStep confirm = next_query(3, prefix);
            REQUIRE(confirm.done.has_value());
            CHECK(*confirm.done == *step.done);
            return;
        }
        for (bool value : {true, false}) {
            Trace extended = prefix;
            extended.push_back(TraceEntry{*step.next, value});
            explore(std::move(extended));
        }
    };
    explore({});
    CHECK(leaves >= 4);      // both root branches split at least once more
    CHECK(deepest >= 3);
    CHECK(leaves <= 1 << 16);
}

TEST_CASE("forced decisions visit different structures but always finish") {
    // Negating one recorded decision changes the downstream queries, yet the
    // replay still reaches some closure when extended greedily.
    PairwiseModel model = random_parameters(random_structure(3, 1, 91), 92);
    Dataset d = gibbs_sample(model, 150, 93, 200, 3);
    BayesianTest backend(d);
    TestCache cache;
    CachedTest test(backend, cache);
    Trace trace = gsmn_learn(3, test).trace;

    for (std::size_t flip_at = 0; flip_at < trace.size(); ++flip_at) {
        Trace forced(trace.begin(), trace.begin() + flip_at + 1);
        forced[flip_at].independent = !forced[flip_at].independent;
        int guard = 0;
        for (;;) {
            REQUIRE(++guard < 200);
            ReplayStep step = next_query(3, forced);
            if (step.done)
                break;
            forced.push_back(TraceEntry{*step.next, test.evaluate(*step.next).independent});
        }
    }
}

TEST_CASE("trace serialization format") {
    Trace trace{{Triplet(0, 2, {}), false}, {Triplet(0, 1, {2}), true}};
    std::ostringstream out;
    write_trace(out, trace);
    CHECK(out.str() == "0 2 | -> D\n0 1 | 2 -> I\n");
}

TEST_CASE("and-rule keeps only mutual blanket members") {
    // Build a test that answers asymmetrically is impossible for a pure
    // backend, so check the rule on equal inputs: with a perfect oracle the
    // two rules agree.
    Structure truth = random_structure(8, 2, 99);
    OracleTest oracle(truth, 0.99);
    CHECK(gsmn_learn(8, oracle, false).structure == gsmn_learn(8, oracle, true).structure);
}
