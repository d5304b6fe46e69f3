#include "incistat/trend.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace incistat::model {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kRssTol = 1e-10;

double rss_of(std::span<const std::pair<double, double>> points, double a, double b, double c) {
    double rss = 0.0;
    for (const auto& [t, y] : points) {
        const double r = a + b * std::exp(c * t) - y;
        rss += r * r;
    }
    return rss;
}

}  // namespace

TrendFit fit_trend(std::span<const std::pair<double, double>> points, TrendFit::Kind kind) {
    if (points.size() < 4) throw DataError("fit_trend: need at least 4 points");

    if (kind == TrendFit::Kind::Linear) {
        double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
        const double n = static_cast<double>(points.size());
        for (const auto& [t, y] : points) {
            st += t;
            sy += y;
            stt += t * t;
            sty += t * y;
        }
        const double denom = n * stt - st * st;
        if (denom == 0.0) throw DataError("fit_trend: degenerate t values");
        TrendFit fit;
        fit.kind = kind;
        fit.slope = (n * sty - st * sy) / denom;
        fit.intercept = (sy - fit.slope * st) / n;
        for (const auto& [t, y] : points) {
            const double r = fit.intercept + fit.slope * t - y;
            fit.rss += r * r;
        }
        return fit;
    }

    double y_min = points[0].second;
    for (const auto& [t, y] : points) {
        if (y < 0.0) throw DataError("fit_trend: exponential kind needs non-negative counts");
        y_min = std::min(y_min, y);
    }

    // Initial guess: a at the floor of the data, c from the slope of
    // log(y - a + 1) on t, b by least squares given (a, c).
    double a = y_min;
    double st = 0.0, sz = 0.0, stt = 0.0, stz = 0.0;
    const double n = static_cast<double>(points.size());
    for (const auto& [t, y] : points) {
        const double z = std::log(y - a + 1.0);
        st += t;
        sz += z;
        stt += t * t;
        stz += t * z;
    }
    const double denom = n * stt - st * st;
    double c = denom != 0.0 ? (n * stz - st * sz) / denom : 0.1;
    double num = 0.0, den = 0.0;
    for (const auto& [t, y] : points) {
        const double e = std::exp(c * t);
        num += e * (y - a);
        den += e * e;
    }
    double b = den > 0.0 ? num / den : 1.0;

    // Levenberg-Marquardt on (a, b, c).
    double rss = rss_of(points, a, b, c);
    double lambda = 1e-3;
    int stalled = 0;
    TrendFit fit;
    fit.kind = kind;
    fit.a = a;
    fit.b = b;
    fit.c = c;
    fit.rss = rss;

    for (int iter = 1; iter <= kMaxIterations; ++iter) {
        fit.iterations = iter;
        Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
        Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
        for (const auto& [t, y] : points) {
            const double e = std::exp(c * t);
            const Eigen::Vector3d j(1.0, e, b * t * e);
            const double r = a + b * e - y;
            jtj += j * j.transpose();
            jtr += j * r;
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 60; ++attempt) {
            Eigen::Matrix3d damped = jtj;
            for (int d = 0; d < 3; ++d) damped(d, d) += lambda * std::max(jtj(d, d), 1e-12);
            const Eigen::Vector3d delta = damped.ldlt().solve(-jtr);
            const double na = a + delta[0];
            const double nb = b + delta[1];
            const double nc = c + delta[2];
            const double new_rss =
                std::isfinite(nc) ? rss_of(points, na, nb, nc)
                                  : std::numeric_limits<double>::infinity();
            if (std::isfinite(new_rss) && new_rss <= rss) {
                const double improvement = rss - new_rss;
                a = na;
                b = nb;
                c = nc;
                rss = new_rss;
                lambda = std::max(lambda * 0.3, 1e-12);
                fit.a = a;
                fit.b = b;
                fit.c = c;
                fit.rss = rss;
                stepped = true;
                if (improvement <= kRssTol * std::max(1.0, rss)) return fit;
                // a run of near-noise improvements is convergence too
                stalled = improvement <= 1e-8 * std::max(1.0, rss) ? stalled + 1 : 0;
                if (stalled >= 5) return fit;
                break;
            }
            lambda *= 10.0;
            if (lambda > 1e14) break;
        }
        if (!stepped) return fit;  // stuck at a (local) minimum
    }
    throw TrendConvergenceError("fit_trend: no convergence in 500 iterations", fit);
}

double predict_trend(const TrendFit& fit, double t) {
    if (fit.kind == TrendFit::Kind::Linear) return fit.intercept + fit.slope * t;
    return fit.a + fit.b * std::exp(fit.c * t);
}

}  // namespace incistat::model
