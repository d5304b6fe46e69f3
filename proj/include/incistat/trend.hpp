#pragma once

#include <span>
#include <utility>

#include "incistat/common.hpp"

namespace incistat::model {

/// Yearly-count trend fit: either a straight line or the shifted exponential
/// y = a + b * exp(c * t), with t measured in years since the first year of
/// the data (t = 0, 1, ...).
struct TrendFit {
    enum class Kind { Linear, Exponential };
    Kind kind = Kind::Linear;
    double slope = 0.0;
    double intercept = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double rss = 0.0;
    int iterations = 0;
};

class TrendConvergenceError : public ConvergenceError {
  public:
    TrendConvergenceError(const std::string& message, TrendFit best)
        : ConvergenceError(message), best_(best) {}
    const TrendFit& best_iterate() const { return best_; }

  private:
    TrendFit best_;
};

/// Linear fits use least squares; exponential fits use Levenberg-Marquardt on
/// (a, b, c), initialized with a = min(y), c from a log-linear regression on
/// (y - a + 1) and b by back-substitution. Converged when the relative RSS
/// change drops below 1e-10; more than 500 iterations throws
/// TrendConvergenceError carrying the best iterate.
TrendFit fit_trend(std::span<const std::pair<double, double>> points, TrendFit::Kind kind);

double predict_trend(const TrendFit& fit, double t);

}  // namespace incistat::model
