#ifndef MN_CITESTS_HPP
#define MN_CITESTS_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "mn/dataset.hpp"
#include "mn/graph.hpp"

namespace mn {

/// Posteriors are clamped into [kPosteriorEps, 1 - kPosteriorEps] so that
/// -log of either assertion value stays finite everywhere.
inline constexpr double kPosteriorEps = 1e-12;

/// Outcome of one conditional independence query.
struct Judgment {
    Triplet triplet;
    double posterior_independent; // Pr(T = independent | D), clamped
    bool independent;             // the boolean decision
    bool reliable;
    long cost_units;  // N * (2 + |z|)
    double statistic; // chi-square only, NaN otherwise
    double p_value;   // chi-square only, NaN otherwise
};

class IndependenceTest {
  public:
    virtual ~IndependenceTest() = default;
    virtual Judgment evaluate(const Triplet& t) const = 0;
};

/// Bayesian test: compares the Dirichlet-multinomial marginal likelihood of
/// a model where x and y are independent within every z-slice against the
/// full per-slice joint, with uniform (all-ones) priors and equal model
/// priors. Returns the posterior probability of independence.
class BayesianTest : public IndependenceTest {
  public:
    explicit BayesianTest(const Dataset& d) : data_(&d) {}
    Judgment evaluate(const Triplet& t) const override;

  private:
    const Dataset* data_;
};

/// Pearson chi-square with per-slice pooling: the statistic and the degrees
/// of freedom (r-1)(c-1), counting only nonzero rows and columns, are summed
/// over z-slices. Deemed unreliable when more than 20% of the cells with
/// nonzero margins have an expected count below 5.
class ChiSquareTest : public IndependenceTest {
  public:
    ChiSquareTest(const Dataset& d, double alpha = 0.05);
    Judgment evaluate(const Triplet& t) const override;

  private:
    const Dataset* data_;
    double alpha_;
};

/// Answers queries from a known structure via vertex separation; posterior
/// is p_hi for the separation-consistent value. Gives the correctness tests
/// a backend with controllable confidence.
class OracleTest : public IndependenceTest {
  public:
    OracleTest(const Structure& truth, double p_hi);
    Judgment evaluate(const Triplet& t) const override;

  private:
    const Structure* truth_;
    double p_hi_;
};

/// Memo of judgments keyed by canonical triplet, so (x,y|z) and (y,x|z)
/// collide. Lookups and inserts may run from several workers; hits return
/// the stored judgment bit for bit.
class TestCache {
  public:
    std::optional<Judgment> find(const Triplet& t);
    const Judgment& insert(const Triplet& t, Judgment j);

    long hits() const;
    long misses() const;
    long size() const;
    long cost_units() const; // summed over fresh computations

    void reset_counters();

  private:
    mutable std::mutex mu_;
    std::unordered_map<Triplet, Judgment, TripletHash> map_;
    long hits_ = 0;
    long misses_ = 0;
    long cost_units_ = 0;
};

/// Backend wrapper that consults the cache first.
class CachedTest : public IndependenceTest {
  public:
    CachedTest(const IndependenceTest& backend, TestCache& cache)
        : backend_(&backend), cache_(&cache) {}
    Judgment evaluate(const Triplet& t) const override;
    TestCache& cache() const { return *cache_; }

  private:
    const IndependenceTest* backend_;
    TestCache* cache_;
};

Judgment bayesian_posterior(const Dataset& d, const Triplet& t);
Judgment chi_square(const Dataset& d, const Triplet& t, double alpha = 0.05);
Judgment oracle_test(const Structure& gstar, const Triplet& t, double p_hi);
Judgment cached(const IndependenceTest& backend, TestCache& cache, const Triplet& t);

/// Regularized incomplete gamma functions, used for chi-square p-values.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

} // namespace mn

#endif
