#pragma once

namespace incistat::special {

// Distribution helpers built on the error function, the regularized
// incomplete gamma function and the regularized incomplete beta function.
// All CDFs return values in [0,1]; non-finite or out-of-domain arguments
// throw DataError.

double normal_cdf(double x);
double normal_quantile(double p);  // Wichura's PPND16 (AS 241)

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);
/// Upper tail Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b), a,b > 0, x in [0,1].
double inc_beta(double a, double b, double x);

double chisq_cdf(double x, double df);
double chisq_sf(double x, double df);

double t_cdf(double x, double df);
/// Two-sided tail probability for a t statistic.
double t_two_sided(double x, double df);
/// Quantile of the t distribution, solved by bisection on t_cdf.
double t_quantile(double p, double df);

double f_cdf(double x, double d1, double d2);
double f_sf(double x, double d1, double d2);

double digamma(double x);
double trigamma(double x);

}  // namespace incistat::special
