#ifndef MN_SYNTH_HPP
#define MN_SYNTH_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mn/dataset.hpp"
#include "mn/graph.hpp"

namespace mn {

/// Binary pairwise model over spins {-1,+1}:
///   p(s) proportional to exp( sum over edges (i,j) of w_ij * s_i * s_j ).
/// Holds the parameters in their sampling role only; learning never sees
/// them.
class PairwiseModel {
  public:
    PairwiseModel(Structure g, std::vector<double> edge_weights);

    const Structure& structure() const { return g_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<double>& weights() const { return weights_; }

    /// Neighbors of i with their edge weights.
    const std::vector<std::pair<int, double>>& adjacency(int i) const { return adj_[i]; }

  private:
    Structure g_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<double> weights_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
};

/// Random structure: every node i draws a random permutation of the other
/// nodes and connects to the first tau of them; edges accumulate by union.
Structure random_structure(int n, int tau, std::uint64_t seed);

/// Random parameters: per-edge weight with |w| uniform in [0.5, 1.5] and a
/// random sign, strong enough that dependencies stay visible along paths.
PairwiseModel random_parameters(const Structure& g, std::uint64_t seed);

inline constexpr double kWeightLo = 0.5;
inline constexpr double kWeightHi = 1.5;

/// Single-site Gibbs sweeps in index order: burn_in discarded sweeps, then
/// one row kept every `thin` sweeps until n_rows rows. Binary columns coded
/// {0, 1}.
Dataset gibbs_sample(const PairwiseModel& m, long n_rows, std::uint64_t seed,
                     int burn_in = 1000, int thin = 10);

/// Weights file: one "u v w" line per edge, in edge order.
void write_weights(std::ostream& out, const PairwiseModel& m);
PairwiseModel read_weights(std::istream& in, const Structure& g);

} // namespace mn

#endif
