#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>

#include "mn/eval.hpp"
#include "mn/ibmap_ts.hpp"
#include "mn/rng.hpp"
#include "mn/synth.hpp"

using namespace mn;

namespace {

/// Two-decision mock tree: the first query is (0;2|{}), the second depends
/// on the first answer, and per-assertion posteriors are scripted so that
/// the two branches of one query need not sum to one.
struct MockTree {
    Triplet q_root{0, 2, {}};
    Triplet q_after_dep{0, 1, {2}};
    Triplet q_after_indep{0, 1, {}};

    ReplayStep operator()(const Trace& prefix) const {
        if (prefix.empty())
            return {q_root, std::nullopt};
        if (prefix.size() == 1)
            return {prefix[0].independent ? q_after_indep : q_after_dep, std::nullopt};
        Structure g(3);
        if (!prefix[0].independent)
            g.set_edge(0, 2, true);
        if (!prefix[1].independent)
            g.set_edge(0, 1, true);
        return {std::nullopt, g};
    }

    double posterior(const Triplet& t, bool value) const {
        if (t == q_root)
            return value ? 0.4 : 0.7;
        if (t == q_after_dep)
            return value ? 0.75 : 0.85;
        return value ? 0.6 : 0.5;
    }
};

double brute_force_min_cost(int n, const AssertionPosterior& posterior) {
    // Depth-first enumeration of every complete decision vector, pruned by
    // the best complete cost found so far (step costs are nonnegative).
    double best = std::numeric_limits<double>::infinity();
    std::function<void(Trace, double)> walk = [&](Trace prefix, double cost) {
        if (cost >= best)
            return;
        ReplayStep step = next_query(n, prefix);
        if (step.done) {
            best = std::min(best, cost);
            return;
        }
        for (bool value : {true, false}) {
            Trace extended = prefix;
            extended.push_back(TraceEntry{*step.next, value});
            walk(std::move(extended), cost - std::log(posterior(*step.next, value)));
        }
    };
    walk({}, 0.0);
    return best;
}

} // namespace

TEST_CASE("worked example: costs, pop order, and the winning leaf") {
    MockTree mock;
    CHECK(-std::log(0.6) == doctest::Approx(0.511).epsilon(1e-3));
    CHECK(-std::log(0.4) == doctest::Approx(0.916).epsilon(1e-3));
    CHECK(-std::log(0.7) == doctest::Approx(0.357).epsilon(1e-3));
    CHECK(-std::log(0.85) == doctest::Approx(0.163).epsilon(1e-3));

    std::vector<std::pair<double, bool>> pops; // (path cost, decision)
    TsOptions opts;
    opts.on_expand = [&pops](std::size_t, double cost, const Triplet&, bool value) {
        pops.push_back({cost, value});
    };
    TsResult r = uniform_cost_search(
        mock, [&mock](const Triplet& t, bool v) { return mock.posterior(t, v); }, opts);

    REQUIRE(r.found);
    // Dependent root branch pops first (0.357 beats 0.916), then its
    // dependent child at 0.357 + 0.163 = 0.520, which is the goal prefix.
    REQUIRE(pops.size() == 2);
    CHECK(pops[0].first == doctest::Approx(0.357).epsilon(1e-3));
    CHECK_FALSE(pops[0].second);
    CHECK(pops[1].first == doctest::Approx(0.520).epsilon(1e-3));
    CHECK_FALSE(pops[1].second);

    CHECK(r.path_cost == doctest::Approx(0.520).epsilon(1e-3));
    CHECK(std::exp(-r.path_cost) == doctest::Approx(0.7 * 0.85).epsilon(1e-12));
    CHECK(std::exp(-r.path_cost) == doctest::Approx(0.595).epsilon(1e-3));
    CHECK(r.structure.has_edge(0, 2));
    CHECK(r.structure.has_edge(0, 1));

    // Optimal over all four leaves: 1.427, 1.609, 0.645, 0.520.
    const double leaves[] = {0.916 + 0.511, 0.916 + 0.693, 0.357 + 0.288, 0.357 + 0.163};
    for (double leaf : leaves)
        CHECK(r.path_cost <= leaf + 1e-3);
}

TEST_CASE("confident oracle: the true structure wins at trace-length cost") {
    for (int seed = 0; seed < 4; ++seed) {
        Structure truth = random_structure(4, 1, 200 + seed);
        OracleTest backend(truth, 0.99);
        TestCache cache;
        CachedTest test(backend, cache);

        TsResult r = ibmap_ts_search(4, test);
        REQUIRE(r.found);
        CHECK(edge_hamming(r.structure, truth) == 0);
        CHECK(r.path_cost ==
              doctest::Approx(r.closure.size() * -std::log(0.99)).epsilon(1e-9));
    }
}

TEST_CASE("bayesian n=3 search is optimal over all decision vectors") {
    for (int seed = 0; seed < 5; ++seed) {
        PairwiseModel model = random_parameters(random_structure(3, 1, 300 + seed), seed);
        Dataset d = gibbs_sample(model, 120, 400 + seed, 200, 3);
        BayesianTest backend(d);
        TestCache cache;
        CachedTest test(backend, cache);
        AssertionPosterior posterior = [&test](const Triplet& t, bool value) {
            const Judgment j = test.evaluate(t);
            return value ? j.posterior_independent : 1.0 - j.posterior_independent;
        };

        TsResult r = ibmap_ts_search(3, test);
        REQUIRE(r.found);
        CHECK(r.path_cost == doctest::Approx(brute_force_min_cost(3, posterior)).epsilon(1e-9));

        // The returned prefix is a closure of the returned structure.
        ReplayStep done = next_query(3, r.closure);
        REQUIRE(done.done.has_value());
        CHECK(*done.done == r.structure);

        // exp(-path_cost) is the closure's posterior product.
        double product = 1.0;
        for (const TraceEntry& e : r.closure)
            product *= posterior(e.triplet, e.independent);
        CHECK(std::exp(-r.path_cost) == doctest::Approx(product).epsilon(1e-9));
    }
}

TEST_CASE("pop sequence has nondecreasing path cost") {
    PairwiseModel model = random_parameters(random_structure(4, 1, 500), 501);
    Dataset d = gibbs_sample(model, 150, 502, 200, 3);
    BayesianTest backend(d);
    TestCache cache;
    CachedTest test(backend, cache);

    double last = 0.0;
    TsOptions opts;
    opts.on_expand = [&last](std::size_t, double cost, const Triplet&, bool) {
        CHECK(cost >= last - 1e-12);
        last = cost;
    };
    TsResult r = ibmap_ts_search(4, test, opts);
    CHECK(r.found);
    CHECK(r.path_cost >= last - 1e-12);
}

TEST_CASE("search optimality on random scripted trees") {
    // Independent of the blanket learner: random complete binary decision
    // trees with arbitrary per-assertion posteriors, checked against an
    // exhaustive leaf enumeration.
    Rng rng(777);
    for (int trial = 0; trial < 10; ++trial) {
        const int depth = rng.uniform_int(2, 8);
        // Query at level i is (0, i+1 | {}), so prefixes map to levels.
        std::vector<std::array<double, 2>> posterior_of(depth);
        for (auto& p : posterior_of) {
            p[0] = rng.uniform_real(0.05, 0.95); // dependent branch
            p[1] = rng.uniform_real(0.05, 0.95); // independent branch
        }
        QueryOperator op = [&](const Trace& prefix) -> ReplayStep {
            if (prefix.size() < static_cast<std::size_t>(depth))
                return {Triplet(0, static_cast<int>(prefix.size()) + 1, {}), std::nullopt};
            Structure g(depth + 1);
            for (int i = 0; i < depth; ++i)
                if (!prefix[i].independent)
                    g.set_edge(0, i + 1, true);
            return {std::nullopt, g};
        };
        AssertionPosterior post = [&](const Triplet& t, bool value) {
            return posterior_of[t.y() - 1][value ? 1 : 0];
        };

        double best = std::numeric_limits<double>::infinity();
        for (std::size_t leaf = 0; leaf < (std::size_t{1} << depth); ++leaf) {
            double cost = 0.0;
            for (int i = 0; i < depth; ++i)
                cost -= std::log(posterior_of[i][(leaf >> i) & 1]);
            best = std::min(best, cost);
        }

        TsResult r = uniform_cost_search(op, post);
        REQUIRE(r.found);
        CHECK(r.path_cost == doctest::Approx(best).epsilon(1e-9));
    }
}

TEST_CASE("node budget cuts the search off") {
    PairwiseModel model = random_parameters(random_structure(4, 2, 600), 601);
    Dataset d = gibbs_sample(model, 150, 602, 200, 3);
    BayesianTest backend(d);
    TestCache cache;
    CachedTest test(backend, cache);

    TsOptions opts;
    opts.node_budget = 2;
    TsResult r = ibmap_ts_search(4, test, opts);
    CHECK_FALSE(r.found);
    CHECK(r.budget_exhausted);
    CHECK(r.expansions <= 2);
}
