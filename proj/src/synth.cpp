#include "mn/synth.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "mn/rng.hpp"

namespace mn {

PairwiseModel::PairwiseModel(Structure g, std::vector<double> edge_weights)
    : g_(std::move(g)), edges_(g_.edges()), weights_(std::move(edge_weights)) {
    if (weights_.size() != edges_.size())
        throw std::invalid_argument("one weight per edge required");
    adj_.assign(g_.node_count(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto [u, v] = edges_[e];
        adj_[u].emplace_back(v, weights_[e]);
        adj_[v].emplace_back(u, weights_[e]);
    }
}

Structure random_structure(int n, int tau, std::uint64_t seed) {
    if (tau < 1 || tau >= n)
        throw std::invalid_argument("tau must satisfy 1 <= tau < n");
    Rng rng(seed);
    Structure g(n);
    std::vector<int> others(n - 1);
    for (int i = 0; i < n; ++i) {
        int k = 0;
        for (int j = 0; j < n; ++j)
            if (j != i)
                others[k++] = j;
        for (int j = n - 2; j > 0; --j)
            std::swap(others[j], others[rng.uniform_int(0, j)]);
        for (int t = 0; t < tau; ++t)
            g.set_edge(i, others[t], true);
    }
    return g;
}

PairwiseModel random_parameters(const Structure& g, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> weights;
    weights.reserve(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const double magnitude = rng.uniform_real(kWeightLo, kWeightHi);
        weights.push_back(rng.bernoulli(0.5) ? magnitude : -magnitude);
    }
    return PairwiseModel(g, std::move(weights));
}

Dataset gibbs_sample(const PairwiseModel& m, long n_rows, std::uint64_t seed, int burn_in,
                     int thin) {
    if (n_rows < 1)
        throw std::invalid_argument("at least one row required");
    if (thin < 1)
        throw std::invalid_argument("thin must be positive");
    const int n = m.structure().node_count();
    Rng rng(seed);

    std::vector<int> spin(n);
    for (int i = 0; i < n; ++i)
        spin[i] = rng.bernoulli(0.5) ? 1 : -1;

    auto sweep = [&]() {
        for (int i = 0; i < n; ++i) {
            double field = 0.0;
            for (const auto& [j, w] : m.adjacency(i))
                field += w * spin[j];
            const double p_plus = 1.0 / (1.0 + std::exp(-2.0 * field));
            spin[i] = rng.bernoulli(p_plus) ? 1 : -1;
        }
    };

    for (int s = 0; s < burn_in; ++s)
        sweep();

    std::vector<std::int32_t> cells;
    cells.reserve(static_cast<std::size_t>(n_rows) * n);
    for (long r = 0; r < n_rows; ++r) {
        for (int s = 0; s < thin; ++s)
            sweep();
        for (int i = 0; i < n; ++i)
            cells.push_back(spin[i] > 0 ? 1 : 0);
    }

    std::vector<std::string> names(n);
    std::vector<std::vector<std::string>> labels(n, {"0", "1"});
    for (int i = 0; i < n; ++i)
        names[i] = "x" + std::to_string(i);
    return Dataset(std::move(names), std::vector<int>(n, 2), std::move(labels),
                   std::move(cells));
}

void write_weights(std::ostream& out, const PairwiseModel& m) {
    char buf[40];
    for (std::size_t e = 0; e < m.edges().size(); ++e) {
        std::snprintf(buf, sizeof(buf), "%.17g", m.weights()[e]);
        out << m.edges()[e].first << " " << m.edges()[e].second << " " << buf << "\n";
    }
}

PairwiseModel read_weights(std::istream& in, const Structure& g) {
    std::map<std::pair<int, int>, double> by_edge;
    int u, v;
    double w;
    while (in >> u >> v >> w)
        by_edge[{std::min(u, v), std::max(u, v)}] = w;
    std::vector<double> weights;
    for (const auto& edge : g.edges()) {
        auto it = by_edge.find(edge);
        if (it == by_edge.end())
            throw std::runtime_error("weights file missing edge " + std::to_string(edge.first) +
                                     " " + std::to_string(edge.second));
        weights.push_back(it->second);
    }
    return PairwiseModel(g, std::move(weights));
}

} // namespace mn
