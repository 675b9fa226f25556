#ifndef MN_EVAL_HPP
#define MN_EVAL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mn/citests.hpp"
#include "mn/graph.hpp"

namespace mn {

/// Random triplets stratified by conditioning-set cardinality 0..n-2, equal
/// counts per stratum with any remainder assigned to the smallest
/// cardinalities. Each triplet comes from a fresh random permutation:
/// x = pi_1, y = pi_2, z = pi_3..pi_{m+2}.
struct TripletSample {
    std::vector<Triplet> triplets;
    std::vector<long> per_cardinality; // counts for m = 0..n-2
    std::uint64_t seed = 0;
};

TripletSample sample_triplets(int n, long total, std::uint64_t seed);

/// Number of unordered pairs whose edge indicator differs.
long edge_hamming(const Structure& g, const Structure& gstar);

/// Fraction of sampled triplets on which the two structures disagree under
/// vertex separation.
double independence_hamming_structure(const Structure& g, const Structure& gstar,
                                      const TripletSample& ts);

/// Fraction of sampled triplets on which the structure's vertex separation
/// disagrees with the test's boolean decision. The test must be bound to
/// the complete dataset even when g was learned from a subsample.
double independence_hamming_data(const Structure& g, const IndependenceTest& test,
                                 const TripletSample& ts);

/// Paired error ratios against a baseline. A pair with both errors zero is
/// a ratio of 1; a pair where only the baseline is zero is undefined and is
/// excluded from the mean, counted separately.
struct RatioSummary {
    std::vector<double> ratios; // defined pairs only
    double mean = 0.0;
    double sd = 0.0;
    long undefined_pairs = 0;

    /// "0.318(0.225)" style; "undefined" when no pair is defined.
    std::string formatted() const;
};

RatioSummary ratio_report(std::span<const double> ours, std::span<const double> baseline);

/// "mean(sd)" with three decimals, the table convention.
std::string format_mean_sd(double mean, double sd);

} // namespace mn

#endif
