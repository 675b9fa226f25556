#include "mn/eval.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mn/rng.hpp"

namespace mn {

TripletSample sample_triplets(int n, long total, std::uint64_t seed) {
    if (n < 3)
        throw std::invalid_argument("triplet sampling needs n >= 3");
    if (total < n - 1)
        throw std::invalid_argument("need at least one triplet per cardinality");
    const int strata = n - 1; // m = 0..n-2
    const long base = total / strata;
    const long remainder = total % strata;

    TripletSample ts;
    ts.seed = seed;
    ts.per_cardinality.assign(strata, base);
    for (long m = 0; m < remainder; ++m)
        ts.per_cardinality[m] += 1;

    Rng rng(seed);
    ts.triplets.reserve(total);
    for (int m = 0; m < strata; ++m) {
        for (long k = 0; k < ts.per_cardinality[m]; ++k) {
            const std::vector<int> pi = rng.permutation(n);
            ts.triplets.emplace_back(pi[0], pi[1],
                                     std::vector<int>(pi.begin() + 2, pi.begin() + 2 + m));
        }
    }
    return ts;
}

long edge_hamming(const Structure& g, const Structure& gstar) {
    if (g.node_count() != gstar.node_count())
        throw std::invalid_argument("edge_hamming requires equal node counts");
    long differing = 0;
    for (int u = 0; u < g.node_count(); ++u)
        for (int v = u + 1; v < g.node_count(); ++v)
            differing += g.has_edge(u, v) != gstar.has_edge(u, v);
    return differing;
}

double independence_hamming_structure(const Structure& g, const Structure& gstar,
                                      const TripletSample& ts) {
    if (g.node_count() != gstar.node_count())
        throw std::invalid_argument("structures must have equal node counts");
    if (ts.triplets.empty())
        throw std::invalid_argument("empty triplet sample");
    long disagreements = 0;
    for (const Triplet& t : ts.triplets)
        disagreements += vertex_separated(g, t) != vertex_separated(gstar, t);
    return static_cast<double>(disagreements) / static_cast<double>(ts.triplets.size());
}

double independence_hamming_data(const Structure& g, const IndependenceTest& test,
                                 const TripletSample& ts) {
    if (ts.triplets.empty())
        throw std::invalid_argument("empty triplet sample");
    long disagreements = 0;
    for (const Triplet& t : ts.triplets)
        disagreements += vertex_separated(g, t) != test.evaluate(t).independent;
    return static_cast<double>(disagreements) / static_cast<double>(ts.triplets.size());
}

RatioSummary ratio_report(std::span<const double> ours, std::span<const double> baseline) {
    if (ours.size() != baseline.size())
        throw std::invalid_argument("ratio_report requires paired runs");
    RatioSummary summary;
    for (std::size_t i = 0; i < ours.size(); ++i) {
        if (baseline[i] == 0.0) {
            if (ours[i] == 0.0)
                summary.ratios.push_back(1.0);
            else
                ++summary.undefined_pairs;
        } else {
            summary.ratios.push_back(ours[i] / baseline[i]);
        }
    }
    const std::size_t k = summary.ratios.size();
    if (k > 0) {
        double sum = 0.0;
        for (double r : summary.ratios)
            sum += r;
        summary.mean = sum / static_cast<double>(k);
        if (k > 1) {
            double ss = 0.0;
            for (double r : summary.ratios)
                ss += (r - summary.mean) * (r - summary.mean);
            summary.sd = std::sqrt(ss / static_cast<double>(k - 1));
        }
    }
    return summary;
}

std::string RatioSummary::formatted() const {
    if (ratios.empty())
        return "undefined";
    return format_mean_sd(mean, sd);
}

std::string format_mean_sd(double mean, double sd) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f(%.3f)", mean, sd);
    return buf;
}

} // namespace mn
