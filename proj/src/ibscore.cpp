#include "mn/ibscore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mn {

namespace {

/// Conditioning set of the (first, second) closure assertion: the boundary
/// of `first` with `second` removed.
std::vector<int> blanket_conditioning(const Structure& g, int first, int second) {
    std::vector<int> z = g.neighbors(first);
    z.erase(std::remove(z.begin(), z.end(), second), z.end());
    return z;
}

} // namespace

Closure mb_closure(const Structure& g) {
    const int n = g.node_count();
    Closure closure;
    closure.assertions.reserve(static_cast<std::size_t>(n) * (n - 1));
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (y == x)
                continue;
            closure.assertions.push_back(
                Assertion{Triplet(x, y, blanket_conditioning(g, x, y)), !g.has_edge(x, y)});
        }
    }
    return closure;
}

double ib_score(const Structure& g, const IndependenceTest& test) {
    double total = 0.0;
    for (const Assertion& a : mb_closure(g).assertions)
        total += assertion_log_posterior(test.evaluate(a.triplet), a.independent);
    return total;
}

ScoreState::ScoreState(Structure g, const IndependenceTest& test)
    : g_(std::move(g)), test_(&test) {
    const int n = g_.node_count();
    terms_.assign(static_cast<std::size_t>(n) * n, 0.0);
    total_ = 0.0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (y != x) {
                const double term = pair_term(g_, x, y);
                terms_[static_cast<std::size_t>(x) * n + y] = term;
                total_ += term;
            }
}

double ScoreState::pair_term(const Structure& g, int first, int second) const {
    const Triplet t(first, second, blanket_conditioning(g, first, second));
    return assertion_log_posterior(test_->evaluate(t), !g.has_edge(first, second));
}

double ScoreState::preview_flip(int x, int y) const {
    if (x == y)
        throw std::invalid_argument("cannot flip a self-loop");
    const int n = g_.node_count();
    const Structure flipped = edge_flip(g_, x, y);
    double delta = 0.0;
    for (int other = 0; other < n; ++other) {
        if (other != x)
            delta += pair_term(flipped, x, other) - term(x, other);
        if (other != y)
            delta += pair_term(flipped, y, other) - term(y, other);
    }
    return total_ + delta;
}

double ScoreState::apply_flip(int x, int y) {
    if (x == y)
        throw std::invalid_argument("cannot flip a self-loop");
    const int n = g_.node_count();
    const Structure flipped = edge_flip(g_, x, y);
    double delta = 0.0;
    for (int other = 0; other < n; ++other) {
        if (other != x) {
            const double fresh = pair_term(flipped, x, other);
            delta += fresh - term(x, other);
            terms_[static_cast<std::size_t>(x) * n + other] = fresh;
        }
        if (other != y) {
            const double fresh = pair_term(flipped, y, other);
            delta += fresh - term(y, other);
            terms_[static_cast<std::size_t>(y) * n + other] = fresh;
        }
    }
    g_ = flipped;
    total_ += delta;
    return delta;
}

double ScoreState::recompute_total() const {
    const int n = g_.node_count();
    double sum = 0.0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (y != x)
                sum += term(x, y);
    return sum;
}

std::pair<ScoreState, double> flip_rescore(const ScoreState& s, int x, int y) {
    ScoreState next = s;
    const double delta = next.apply_flip(x, y);
    return {std::move(next), delta};
}

} // namespace mn
