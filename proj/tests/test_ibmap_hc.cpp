#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mn/eval.hpp"
#include "mn/gsmn.hpp"
#include "mn/ibmap_hc.hpp"
#include "mn/rng.hpp"
#include "mn/synth.hpp"

using namespace mn;

TEST_CASE("the true structure is a fixed point under a confident oracle") {
    Structure truth = random_structure(8, 2, 5);
    OracleTest oracle(truth, 0.99);
    HcOptions opts;
    opts.start = truth;
    HcResult r = ibmap_hc_search(8, oracle, opts);
    CHECK(r.ascents == 0);
    CHECK(r.structure == truth);
    CHECK(r.log_score == r.start_score);
    CHECK_FALSE(r.truncated);
}

TEST_CASE("one wrong edge is repaired in a single ascent") {
    Structure truth = random_structure(7, 1, 9);
    Structure start = edge_flip(truth, 0, 3);
    OracleTest oracle(truth, 0.99);

    // The correcting flip must be the unique score maximum one flip away.
    ScoreState probe(start, oracle);
    const double fix_score = probe.preview_flip(0, 3);
    for (int x = 0; x < 7; ++x)
        for (int y = x + 1; y < 7; ++y)
            if (!(x == 0 && y == 3))
                CHECK(probe.preview_flip(x, y) < fix_score);

    HcOptions opts;
    opts.start = start;
    HcResult r = ibmap_hc_search(7, oracle, opts);
    CHECK(r.ascents == 1);
    CHECK(r.structure == truth);
    CHECK(r.log_score > r.start_score);
}

TEST_CASE("accepted deltas are strictly positive and the score climbs") {
    PairwiseModel model = random_parameters(random_structure(8, 2, 15), 16);
    Dataset d = gibbs_sample(model, 300, 17, 300, 3);
    BayesianTest backend(d);
    TestCache cache;
    CachedTest test(backend, cache);

    HcOptions opts;
    opts.start = Structure(8); // empty start leaves room to climb
    HcResult r = ibmap_hc_search(8, test, opts);
    CHECK(r.log_score >= r.start_score);
    CHECK((r.ascents == 0) == (r.log_score == r.start_score));
    double running = r.start_score;
    for (double delta : r.iteration_deltas) {
        CHECK(delta > 1e-9);
        running += delta;
    }
    CHECK(running == doctest::Approx(r.log_score).epsilon(1e-9));
    CHECK(static_cast<long>(r.iteration_deltas.size()) == r.ascents);
}

TEST_CASE("two runs are identical") {
    PairwiseModel model = random_parameters(random_structure(7, 1, 25), 26);
    Dataset d = gibbs_sample(model, 250, 27, 300, 3);
    BayesianTest backend(d);
    TestCache cache;
    CachedTest test(backend, cache);

    HcResult a = ibmap_hc_search(7, test);
    HcResult b = ibmap_hc_search(7, test);
    CHECK(a.structure == b.structure);
    CHECK(a.ascents == b.ascents);
    CHECK(a.log_score == b.log_score);
}

TEST_CASE("iteration cap marks the run truncated") {
    Structure truth = random_structure(6, 1, 35);
    Structure start = edge_flip(edge_flip(truth, 0, 2), 1, 4);
    OracleTest oracle(truth, 0.99);
    HcOptions opts;
    opts.start = start;
    opts.max_iters = 1;
    HcResult r = ibmap_hc_search(6, oracle, opts);
    CHECK(r.ascents == 1);
    CHECK(r.truncated);

    opts.max_iters = -1;
    HcResult full = ibmap_hc_search(6, oracle, opts);
    CHECK_FALSE(full.truncated);
    CHECK(full.structure == truth);
}

TEST_CASE("hill climbing never scores below its gsmn start") {
    PairwiseModel model = random_parameters(random_structure(8, 2, 45), 46);
    Dataset d = gibbs_sample(model, 200, 47, 300, 3);
    BayesianTest backend(d);
    TestCache cache;
    CachedTest test(backend, cache);

    GsmnResult gsmn = gsmn_learn(8, test);
    const double gsmn_score = ib_score(gsmn.structure, test);
    HcResult hc = ibmap_hc_search(8, test);
    CHECK(hc.start_score == doctest::Approx(gsmn_score).epsilon(1e-9));
    CHECK(hc.log_score >= gsmn_score - 1e-9);
}
