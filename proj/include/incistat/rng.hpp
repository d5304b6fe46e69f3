#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace incistat {

/// Deterministic random source: the mt19937_64 engine is pinned by the
/// standard and the distributions below are hand-rolled, so a seed produces
/// identical streams on every platform (std::*_distribution does not
/// guarantee that).
class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t bits() { return engine_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    uint64_t uniform_index(uint64_t n) { return n == 0 ? 0 : engine_() % n; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller with a cached spare.
    double normal();

    /// Index drawn from a probability vector (values summing to 1).
    size_t categorical(std::span<const double> probabilities);

    int poisson(double lambda);

    double gamma(double shape, double scale);

    /// Counts with mean mu and size theta: Poisson mixed over
    /// Gamma(theta, mu/theta).
    int neg_binomial(double mu, double theta);

    int binomial(int n, double p);

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace incistat
