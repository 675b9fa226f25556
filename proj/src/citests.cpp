#include "mn/citests.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double clamp_posterior(double p) {
    if (p < kPosteriorEps)
        return kPosteriorEps;
    if (p > 1.0 - kPosteriorEps)
        return 1.0 - kPosteriorEps;
    return p;
}

/// log of the Dirichlet-multinomial marginal likelihood of `counts` under a
/// symmetric all-ones prior over `k` cells:
///   Gamma(k) / Gamma(total + k) * prod Gamma(count_i + 1).
/// Zero-count cells and empty count vectors contribute nothing.
double log_dirichlet_multinomial(const std::vector<long>& counts, long k, long total) {
    double lp = std::lgamma(static_cast<double>(k)) -
                std::lgamma(static_cast<double>(total + k));
    for (long c : counts)
        if (c > 0)
            lp += std::lgamma(static_cast<double>(c) + 1.0);
    return lp;
}

long cost_of(const Dataset& d, const Triplet& t) {
    return d.row_count() * static_cast<long>(t.span());
}

} // namespace

Judgment BayesianTest::evaluate(const Triplet& t) const {
    const Dataset& d = *data_;
    const ContingencyTable table = contingency_table(d, t);
    const int rx = table.x_arity();
    const int ry = table.y_arity();

    double log_indep = 0.0;
    double log_dep = 0.0;
    std::vector<long> xm(rx), ym(ry);
    for (std::size_t s = 0; s < table.slice_count(); ++s) {
        const std::vector<long>& cells = table.slice(s);
        long slice_total = 0;
        std::fill(xm.begin(), xm.end(), 0L);
        std::fill(ym.begin(), ym.end(), 0L);
        for (int x = 0; x < rx; ++x)
            for (int y = 0; y < ry; ++y) {
                const long c = cells[static_cast<std::size_t>(x) * ry + y];
                xm[x] += c;
                ym[y] += c;
                slice_total += c;
            }
        if (slice_total == 0)
            continue;
        log_indep += log_dirichlet_multinomial(xm, rx, slice_total) +
                     log_dirichlet_multinomial(ym, ry, slice_total);
        log_dep += log_dirichlet_multinomial(cells, static_cast<long>(rx) * ry, slice_total);
    }

    // Equal model priors: posterior of independence is a logistic in the
    // log marginal likelihood gap.
    const double gap = log_indep - log_dep;
    double posterior;
    if (gap >= 0)
        posterior = 1.0 / (1.0 + std::exp(-gap));
    else
        posterior = std::exp(gap) / (1.0 + std::exp(gap));
    posterior = clamp_posterior(posterior);

    return Judgment{t, posterior, posterior >= 0.5, true, cost_of(d, t), kNaN, kNaN};
}

ChiSquareTest::ChiSquareTest(const Dataset& d, double alpha) : data_(&d), alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1)");
}

Judgment ChiSquareTest::evaluate(const Triplet& t) const {
    const Dataset& d = *data_;
    const ContingencyTable table = contingency_table(d, t);
    const int rx = table.x_arity();
    const int ry = table.y_arity();

    double statistic = 0.0;
    long dof = 0;
    long margin_cells = 0;
    long low_expected = 0;
    std::vector<long> xm(rx), ym(ry);
    for (std::size_t s = 0; s < table.slice_count(); ++s) {
        const std::vector<long>& cells = table.slice(s);
        long slice_total = 0;
        std::fill(xm.begin(), xm.end(), 0L);
        std::fill(ym.begin(), ym.end(), 0L);
        for (int x = 0; x < rx; ++x)
            for (int y = 0; y < ry; ++y) {
                const long c = cells[static_cast<std::size_t>(x) * ry + y];
                xm[x] += c;
                ym[y] += c;
                slice_total += c;
            }
        if (slice_total == 0)
            continue;
        int nonzero_rows = 0, nonzero_cols = 0;
        for (int x = 0; x < rx; ++x)
            nonzero_rows += xm[x] > 0;
        for (int y = 0; y < ry; ++y)
            nonzero_cols += ym[y] > 0;
        if (nonzero_rows < 2 || nonzero_cols < 2)
            continue; // slice carries no information about association
        dof += static_cast<long>(nonzero_rows - 1) * (nonzero_cols - 1);
        for (int x = 0; x < rx; ++x) {
            if (xm[x] == 0)
                continue;
            for (int y = 0; y < ry; ++y) {
                if (ym[y] == 0)
                    continue;
                const double expected =
                    static_cast<double>(xm[x]) * ym[y] / static_cast<double>(slice_total);
                const double observed =
                    static_cast<double>(cells[static_cast<std::size_t>(x) * ry + y]);
                statistic += (observed - expected) * (observed - expected) / expected;
                ++margin_cells;
                if (expected < 5.0)
                    ++low_expected;
            }
        }
    }

    const bool reliable =
        margin_cells > 0 && static_cast<double>(low_expected) <= 0.2 * margin_cells;

    if (dof == 0) {
        // Constant column or no informative slice: nothing to test.
        return Judgment{t, clamp_posterior(1.0), true, false, cost_of(d, t), 0.0, 1.0};
    }

    const double p = gamma_q(0.5 * static_cast<double>(dof), 0.5 * statistic);
    // Surrogate posterior so this backend can also drive the score; the
    // boolean decision only needs the p-value.
    const double posterior = clamp_posterior(p);
    return Judgment{t, posterior, p >= alpha_, reliable, cost_of(d, t), statistic, p};
}

OracleTest::OracleTest(const Structure& truth, double p_hi) : truth_(&truth), p_hi_(p_hi) {
    if (!(p_hi > 0.5 && p_hi <= 1.0 - kPosteriorEps))
        throw std::invalid_argument("p_hi must lie in (0.5, 1 - eps]");
}

Judgment OracleTest::evaluate(const Triplet& t) const {
    const bool separated = vertex_separated(*truth_, t);
    const double posterior = clamp_posterior(separated ? p_hi_ : 1.0 - p_hi_);
    return Judgment{t, posterior, separated, true, 0, kNaN, kNaN};
}

std::optional<Judgment> TestCache::find(const Triplet& t) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(t);
    if (it == map_.end())
        return std::nullopt;
    ++hits_;
    return it->second;
}

const Judgment& TestCache::insert(const Triplet& t, Judgment j) {
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, fresh] = map_.try_emplace(t, std::move(j));
    if (fresh) {
        ++misses_;
        cost_units_ += it->second.cost_units;
    } else {
        // Concurrent duplicate computation of the same pure function:
        // identical value, count as a hit.
        ++hits_;
    }
    return it->second;
}

long TestCache::hits() const {
    std::lock_guard<std::mutex> lock(mu_);
    return hits_;
}

long TestCache::misses() const {
    std::lock_guard<std::mutex> lock(mu_);
    return misses_;
}

long TestCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return static_cast<long>(map_.size());
}

long TestCache::cost_units() const {
    std::lock_guard<std::mutex> lock(mu_);
    return cost_units_;
}

void TestCache::reset_counters() {
    std::lock_guard<std::mutex> lock(mu_);
    hits_ = 0;
    misses_ = 0;
    cost_units_ = 0;
}

Judgment CachedTest::evaluate(const Triplet& t) const {
    if (auto hit = cache_->find(t))
        return *hit;
    return cache_->insert(t, backend_->evaluate(t));
}

Judgment bayesian_posterior(const Dataset& d, const Triplet& t) {
    return BayesianTest(d).evaluate(t);
}

Judgment chi_square(const Dataset& d, const Triplet& t, double alpha) {
    return ChiSquareTest(d, alpha).evaluate(t);
}

Judgment oracle_test(const Structure& gstar, const Triplet& t, double p_hi) {
    return OracleTest(gstar, p_hi).evaluate(t);
}

Judgment cached(const IndependenceTest& backend, TestCache& cache, const Triplet& t) {
    return CachedTest(backend, cache).evaluate(t);
}

// Regularized incomplete gamma, series expansion for x < a + 1 and
// continued fraction otherwise.
double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0)
        throw std::invalid_argument("gamma_p requires x >= 0 and a > 0");
    if (x == 0.0)
        return 0.0;
    if (x < a + 1.0) {
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15)
                break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    return 1.0 - gamma_q(a, x);
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0)
        throw std::invalid_argument("gamma_q requires x >= 0 and a > 0");
    if (x == 0.0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - gamma_p(a, x);
    // Lentz's continued fraction.
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15)
            break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace mn
