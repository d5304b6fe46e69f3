#include "incistat/rng.hpp"

#include <cmath>
#include <numbers>

#include "incistat/common.hpp"

namespace incistat {

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

size_t Rng::categorical(std::span<const double> probabilities) {
    const double u = uniform();
    double cumulative = 0.0;
    for (size_t i = 0; i < probabilities.size(); ++i) {
        cumulative += probabilities[i];
        if (u < cumulative) return i;
    }
    return probabilities.empty() ? 0 : probabilities.size() - 1;
}

int Rng::poisson(double lambda) {
    if (lambda < 0.0) throw DataError("poisson: negative rate");
    if (lambda == 0.0) return 0;
    if (lambda > 500.0) {
        // normal approximation guard for extreme rates
        const double v = std::round(lambda + std::sqrt(lambda) * normal());
        return v < 0.0 ? 0 : static_cast<int>(v);
    }
    // Knuth's product method.
    const double limit = std::exp(-lambda);
    int count = -1;
    double product = 1.0;
    do {
        ++count;
        product *= uniform();
    } while (product > limit);
    return count;
}

double Rng::gamma(double shape, double scale) {
    if (shape <= 0.0 || scale <= 0.0) throw DataError("gamma: parameters must be positive");
    if (shape < 1.0) {
        // Boost the shape, then correct: G(a) = G(a+1) * U^(1/a).
        double u = uniform();
        while (u <= 0.0) u = uniform();
        return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze method.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v * scale;
    }
}

int Rng::neg_binomial(double mu, double theta) {
    if (mu < 0.0 || theta <= 0.0) throw DataError("neg_binomial: invalid parameters");
    if (mu == 0.0) return 0;
    return poisson(gamma(theta, mu / theta));
}

int Rng::binomial(int n, double p) {
    int successes = 0;
    for (int i = 0; i < n; ++i) successes += bernoulli(p) ? 1 : 0;
    return successes;
}

}  // namespace incistat
