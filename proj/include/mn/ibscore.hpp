#ifndef MN_IBSCORE_HPP
#define MN_IBSCORE_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "mn/citests.hpp"
#include "mn/graph.hpp"

namespace mn {

/// One conditional independence assertion: a triplet and its asserted value
/// (true = independent).
struct Assertion {
    Triplet triplet;
    bool independent;
};

/// A set of assertions sufficient to determine a structure.
struct Closure {
    std::vector<Assertion> assertions;
    std::size_t size() const { return assertions.size(); }
};

/// Markov-blanket closure: for every ordered pair (x, y), y != x, one
/// assertion over (x ; y | boundary(x) - {y}), independent exactly when
/// (x, y) is not an edge. Always n(n-1) assertions.
Closure mb_closure(const Structure& g);

/// log Pr(T = asserted value | D) for one judgment.
inline double assertion_log_posterior(const Judgment& j, bool asserted_independent) {
    return std::log(asserted_independent ? j.posterior_independent
                                         : 1.0 - j.posterior_independent);
}

/// Sum of assertion log posteriors over the Markov-blanket closure of g.
/// Always <= 0; finite everywhere thanks to posterior clamping.
double ib_score(const Structure& g, const IndependenceTest& test);

/// Holds a structure together with its per-ordered-pair score terms, so an
/// edge flip only refreshes the 2(n-1) terms whose conditioning blanket
/// changed. Owned by a single search worker.
class ScoreState {
  public:
    ScoreState(Structure g, const IndependenceTest& test);

    const Structure& structure() const { return g_; }
    double total() const { return total_; }

    /// Score the structure one flip away without committing to it.
    double preview_flip(int x, int y) const;

    /// Commit the flip of (x, y); returns the score delta.
    double apply_flip(int x, int y);

    /// Recomputed sum over all stored terms; total() tracks it within 1e-9.
    double recompute_total() const;

    double term(int first, int second) const {
        return terms_[static_cast<std::size_t>(first) * g_.node_count() + second];
    }

  private:
    double pair_term(const Structure& g, int first, int second) const;

    Structure g_;
    const IndependenceTest* test_;
    std::vector<double> terms_; // ordered pair (first, second), diagonal unused
    double total_;
};

/// Incremental rescoring as a value operation: returns the state for the
/// flipped structure and the score delta.
std::pair<ScoreState, double> flip_rescore(const ScoreState& s, int x, int y);

} // namespace mn

#endif
