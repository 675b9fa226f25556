#ifndef MN_RNG_HPP
#define MN_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace mn {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a root seed and a task path,
/// so that paired runs (same data, different algorithm) share datasets.
inline std::uint64_t mix_seed(std::uint64_t root, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = splitmix64(root ^ 0x6a09e667f3bcc908ULL);
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    s = splitmix64(s ^ c);
    return s;
}

/// Deterministic random source. Wraps mt19937_64 but draws bounded integers
/// and reals itself: std::uniform_int_distribution is not bit-reproducible
/// across standard libraries, and seeded runs must be.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi], inclusive. Rejection sampling.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v = engine_();
        while (v >= limit)
            v = engine_();
        return lo + static_cast<int>(v % span);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform_real() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * uniform_real();
    }

    bool bernoulli(double p) { return uniform_real() < p; }

    /// Fisher-Yates permutation of 0..n-1.
    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i)
            p[i] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(p[i], p[uniform_int(0, i)]);
        return p;
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace mn

#endif
