#include "incistat/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "incistat/common.hpp"

namespace incistat::special {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw DataError(std::string(what) + ": non-finite argument");
}

// Lower incomplete gamma by power series, x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by modified Lentz continued fraction, x >= a + 1.
double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for the incomplete beta (Lentz).
double beta_cf(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h;
}

double clamp01(double p) {
    if (p < 0.0) return 0.0;
    if (p > 1.0) return 1.0;
    return p;
}

}  // namespace

double normal_cdf(double x) {
    require_finite(x, "normal_cdf");
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double gamma_p(double a, double x) {
    require_finite(a, "gamma_p");
    require_finite(x, "gamma_p");
    if (a <= 0.0) throw DataError("gamma_p: shape must be positive");
    if (x < 0.0) throw DataError("gamma_p: x must be non-negative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return clamp01(gamma_p_series(a, x));
    return clamp01(1.0 - gamma_q_cf(a, x));
}

double gamma_q(double a, double x) {
    require_finite(a, "gamma_q");
    require_finite(x, "gamma_q");
    if (a <= 0.0) throw DataError("gamma_q: shape must be positive");
    if (x < 0.0) throw DataError("gamma_q: x must be non-negative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return clamp01(1.0 - gamma_p_series(a, x));
    return clamp01(gamma_q_cf(a, x));
}

double inc_beta(double a, double b, double x) {
    require_finite(a, "inc_beta");
    require_finite(b, "inc_beta");
    require_finite(x, "inc_beta");
    if (a <= 0.0 || b <= 0.0) throw DataError("inc_beta: shape parameters must be positive");
    if (x < 0.0 || x > 1.0) throw DataError("inc_beta: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                  a * std::log(x) + b * std::log1p(-x));
    // Use the symmetric form on whichever side converges fast.
    if (x < (a + 1.0) / (a + b + 2.0)) return clamp01(front * beta_cf(a, b, x) / a);
    return clamp01(1.0 - front * beta_cf(b, a, 1.0 - x) / b);
}

double chisq_cdf(double x, double df) {
    if (df <= 0.0) throw DataError("chisq_cdf: df must be positive");
    if (x <= 0.0) {
        require_finite(x, "chisq_cdf");
        return 0.0;
    }
    return gamma_p(0.5 * df, 0.5 * x);
}

double chisq_sf(double x, double df) {
    if (df <= 0.0) throw DataError("chisq_sf: df must be positive");
    if (x <= 0.0) {
        require_finite(x, "chisq_sf");
        return 1.0;
    }
    return gamma_q(0.5 * df, 0.5 * x);
}

double t_cdf(double x, double df) {
    require_finite(x, "t_cdf");
    if (df <= 0.0) throw DataError("t_cdf: df must be positive");
    if (x == 0.0) return 0.5;
    const double tail = 0.5 * inc_beta(0.5 * df, 0.5, df / (df + x * x));
    return x > 0.0 ? 1.0 - tail : tail;
}

double t_two_sided(double x, double df) {
    require_finite(x, "t_two_sided");
    return clamp01(inc_beta(0.5 * df, 0.5, df / (df + x * x)));
}

double t_quantile(double p, double df) {
    require_finite(p, "t_quantile");
    if (df <= 0.0) throw DataError("t_quantile: df must be positive");
    if (p <= 0.0 || p >= 1.0) throw DataError("t_quantile: p outside (0,1)");
    if (p == 0.5) return 0.0;
    // Bracket, then bisect; the CDF is strictly monotone.
    double lo = -1.0, hi = 1.0;
    while (t_cdf(lo, df) > p) lo *= 2.0;
    while (t_cdf(hi, df) < p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (t_cdf(mid, df) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * std::max(1.0, std::fabs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

double f_cdf(double x, double d1, double d2) {
    require_finite(x, "f_cdf");
    if (d1 <= 0.0 || d2 <= 0.0) throw DataError("f_cdf: df must be positive");
    if (x <= 0.0) return 0.0;
    return inc_beta(0.5 * d1, 0.5 * d2, d1 * x / (d1 * x + d2));
}

double f_sf(double x, double d1, double d2) {
    require_finite(x, "f_sf");
    if (d1 <= 0.0 || d2 <= 0.0) throw DataError("f_sf: df must be positive");
    if (x <= 0.0) return 1.0;
    return inc_beta(0.5 * d2, 0.5 * d1, d2 / (d1 * x + d2));
}

double normal_quantile(double p) {
    require_finite(p, "normal_quantile");
    if (p <= 0.0 || p >= 1.0) throw DataError("normal_quantile: p outside (0,1)");
    // Wichura (1988), algorithm AS 241, PPND16.
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) *
                        r +
                    4.5921953931549871457e+4) *
                       r +
                   1.3731693765509461125e+4) *
                      r +
                  1.9715909503065514427e+3) *
                     r +
                 1.3314166789178437745e+2) *
                    r +
                3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) *
                        r +
                    2.1213794301586595867e+4) *
                       r +
                   5.3941960214247511077e+3) *
                      r +
                  6.8718700749205790830e+2) *
                     r +
                 4.2313330701600911252e+1) *
                    r +
                1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) *
                         r +
                     1.27045825245236838258e+0) *
                        r +
                    3.64784832476320460504e+0) *
                       r +
                   5.76949722146069140550e+0) *
                      r +
                  4.63033784615654529590e+0) *
                     r +
                 1.42343711074968357734e+0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) *
                         r +
                     1.48103976427480074590e-1) *
                        r +
                    6.89767334985100004550e-1) *
                       r +
                   1.67638483018380384940e+0) *
                      r +
                  2.05319162663775882187e+0) *
                     r +
                 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) *
                         r +
                     2.65321895265761230930e-2) *
                        r +
                    2.96560571828504891230e-1) *
                       r +
                   1.78482653991729133580e+0) *
                      r +
                  5.46378491116411436990e+0) *
                     r +
                 6.65790464350110377720e+0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) *
                         r +
                     7.86869131145613259100e-4) *
                        r +
                    1.48753612908506148525e-2) *
                       r +
                   1.36929880922735805310e-1) *
                      r +
                  5.99832206555887937690e-1) *
                     r +
                 1.0);
    }
    return q < 0.0 ? -value : value;
}

double digamma(double x) {
    require_finite(x, "digamma");
    if (x <= 0.0) throw DataError("digamma: argument must be positive");
    double result = 0.0;
    while (x < 12.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // Asymptotic series with Bernoulli terms through x^-12.
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 -
                      inv2 * (1.0 / 120.0 -
                              inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
    return result;
}

double trigamma(double x) {
    require_finite(x, "trigamma");
    if (x <= 0.0) throw DataError("trigamma: argument must be positive");
    double result = 0.0;
    while (x < 12.0) {
        result += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += inv * (1.0 +
                     inv * (0.5 +
                            inv * (1.0 / 6.0 -
                                   inv2 * (1.0 / 30.0 -
                                           inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0 -
                                                                        inv2 * 5.0 / 66.0))))));
    return result;
}

}  // namespace incistat::special
