#include "incistat/negbin.hpp"

#include <cmath>

#include "incistat/special.hpp"

namespace incistat::model {

namespace {

constexpr int kOuterIterations = 50;
constexpr int kIrlsIterations = 40;
constexpr int kHalvingSteps = 30;
constexpr double kDevianceTol = 1e-8;

Eigen::VectorXd clamp_mu(const Eigen::MatrixXd& x, const Eigen::VectorXd& beta) {
    Eigen::VectorXd eta = x * beta;
    for (Eigen::Index i = 0; i < eta.size(); ++i) eta[i] = std::clamp(eta[i], -30.0, 30.0);
    return eta.array().exp();
}

/// Weighted least squares step of Fisher scoring for the log link.
Eigen::VectorXd irls_step(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& mu, double theta) {
    const Eigen::Index n = x.rows();
    Eigen::VectorXd w(n), z(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double m = mu[i];
        w[i] = std::sqrt(m / (1.0 + m / theta));  // sqrt of mu / (1 + alpha mu)
        z[i] = std::log(m) + (y[i] - m) / m;      // working response
    }
    const Eigen::MatrixXd xw = w.asDiagonal() * x;
    const Eigen::VectorXd zw = w.cwiseProduct(z);
    return Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(xw).solve(zw);
}

// The y values are validated integers, so psi(y + theta) - psi(theta) and its
// relatives reduce to short exact sums. That avoids the catastrophic
// cancellation the lgamma/digamma differences suffer for huge theta.

double theta_score(const Eigen::VectorXd& y, const Eigen::VectorXd& mu, double theta) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double tm = theta + mu[i];
        double digamma_diff = 0.0;
        for (double k = 0.0; k < y[i]; k += 1.0) digamma_diff += 1.0 / (theta + k);
        s += digamma_diff - std::log1p(mu[i] / theta) + (mu[i] - y[i]) / tm;
    }
    return s;
}

double theta_score_derivative(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                              double theta) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double tm = theta + mu[i];
        double trigamma_diff = 0.0;
        for (double k = 0.0; k < y[i]; k += 1.0) trigamma_diff -= 1.0 / ((theta + k) * (theta + k));
        s += trigamma_diff + mu[i] / (theta * tm) - (mu[i] - y[i]) / (tm * tm);
    }
    return s;
}

/// Profile ML update for theta at fixed mu: Newton in log-theta with step
/// halving on the likelihood, clamped to [kThetaMin, kThetaMax].
double update_theta(const Eigen::VectorXd& y, const Eigen::VectorXd& mu, double theta,
                    bool* hit_bound) {
    double log_theta = std::log(theta);
    double best_ll = nb_log_likelihood(y, mu, theta);
    for (int iter = 0; iter < 25; ++iter) {
        const double t = std::exp(log_theta);
        const double score = theta_score(y, mu, t);
        // d l / d u = theta * score, d2 l / d u2 = theta*score + theta^2*score'
        const double grad = t * score;
        const double hess = grad + t * t * theta_score_derivative(y, mu, t);
        double step = hess < 0.0 ? -grad / hess : (grad > 0.0 ? 1.0 : -1.0);
        step = std::clamp(step, -5.0, 5.0);
        if (std::fabs(grad) < 1e-10) break;

        bool improved = false;
        for (int half = 0; half < kHalvingSteps; ++half) {
            const double candidate =
                std::clamp(log_theta + step, std::log(kThetaMin), std::log(kThetaMax));
            const double ll = nb_log_likelihood(y, mu, std::exp(candidate));
            // strict improvement only; a flat plateau must not drift
            if (ll > best_ll + 1e-14 * std::fabs(best_ll)) {
                const bool tiny = std::fabs(candidate - log_theta) < 1e-12;
                log_theta = candidate;
                best_ll = ll;
                improved = !tiny;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    const double theta_hat = std::exp(log_theta);
    if (hit_bound)
        *hit_bound = theta_hat <= kThetaMin * (1.0 + 1e-9) || theta_hat >= kThetaMax * (1.0 - 1e-9);
    return theta_hat;
}

}  // namespace

double nb_deviance(const Eigen::VectorXd& y, const Eigen::VectorXd& mu, double theta) {
    double dev = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        double term = 0.0;
        if (y[i] > 0.0) term += y[i] * std::log(y[i] / mu[i]);
        // log1p form stays accurate when theta dwarfs y and mu
        term -= (y[i] + theta) * std::log1p((y[i] - mu[i]) / (mu[i] + theta));
        dev += term;
    }
    return 2.0 * dev;
}

double nb_log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& mu, double theta) {
    double ll = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double tm = theta + mu[i];
        double gamma_ratio = 0.0;  // log Gamma(y+theta)/Gamma(theta) - y log(theta+mu)
        for (double k = 0.0; k < y[i]; k += 1.0) gamma_ratio += std::log((theta + k) / tm);
        ll += gamma_ratio - std::lgamma(y[i] + 1.0) + y[i] * std::log(mu[i]) -
              theta * std::log1p(mu[i] / theta);
    }
    return ll;
}

NbFit nb_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
             std::optional<double> fixed_theta,
             const std::vector<std::string>& column_names) {
    if (x.rows() != y.size()) throw DataError("nb_fit: row count mismatch");
    if (x.rows() < x.cols()) throw DataError("nb_fit: fewer rows than columns");
    double y_sum = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] < 0.0 || std::fabs(y[i] - std::round(y[i])) > 1e-9)
            throw DataError("nb_fit: responses must be non-negative integers");
        y_sum += y[i];
    }
    if (y_sum == 0.0) throw DataError("nb_fit: all responses are zero");
    if (fixed_theta && (*fixed_theta <= 0.0 || !std::isfinite(*fixed_theta)))
        throw DataError("nb_fit: fixed_theta must be positive and finite");

    NbFit fit;
    fit.column_names = column_names;
    fit.beta = Eigen::VectorXd::Zero(x.cols());
    fit.beta[0] = std::log(y_sum / static_cast<double>(y.size()));
    fit.mu = clamp_mu(x, fit.beta);

    // Warm start: a few Poisson-weighted IRLS rounds (theta -> infinity).
    for (int i = 0; i < 3; ++i) {
        fit.beta = irls_step(x, y, fit.mu, kThetaMax);
        fit.mu = clamp_mu(x, fit.beta);
    }

    if (fixed_theta) {
        fit.theta = *fixed_theta;
    } else {
        // Moment start: solve sum((y-mu)^2 - mu) = sum(mu^2)/theta.
        double num = 0.0, den = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            num += fit.mu[i] * fit.mu[i];
            den += (y[i] - fit.mu[i]) * (y[i] - fit.mu[i]) - fit.mu[i];
        }
        fit.theta = den > 0.0 ? std::clamp(num / den, kThetaMin, kThetaMax) : kThetaMax;
    }

    fit.deviance = nb_deviance(y, fit.mu, fit.theta);
    bool theta_bound = false;

    for (int outer = 0; outer < kOuterIterations; ++outer) {
        ++fit.iterations;
        const double outer_start_deviance = fit.deviance;

        // IRLS for beta at the current theta; step halving keeps every
        // accepted iterate's deviance non-increasing.
        bool beta_settled = false;
        for (int inner = 0; inner < kIrlsIterations && !beta_settled; ++inner) {
            const Eigen::VectorXd proposal = irls_step(x, y, fit.mu, fit.theta);
            const Eigen::VectorXd direction = proposal - fit.beta;
            double scale = 1.0;
            bool accepted = false;
            for (int half = 0; half < kHalvingSteps; ++half) {
                const Eigen::VectorXd candidate = fit.beta + scale * direction;
                const Eigen::VectorXd mu = clamp_mu(x, candidate);
                const double dev = nb_deviance(y, mu, fit.theta);
                if (std::isfinite(dev) && dev <= fit.deviance + 1e-12) {
                    fit.beta = candidate;
                    fit.mu = mu;
                    const double change = fit.deviance - dev;
                    fit.deviance = dev;
                    fit.deviance_trace.emplace_back(fit.theta, dev);
                    accepted = true;
                    beta_settled = change < kDevianceTol * (std::fabs(dev) + 0.1);
                    break;
                }
                scale *= 0.5;
            }
            if (!accepted) break;
        }
        if (!fit.beta.allFinite() || !std::isfinite(fit.deviance)) {
            fit.converged = false;
            fit.warning = "divergence: non-finite iterate";
            return fit;
        }

        if (!fixed_theta) {
            const double new_theta = update_theta(y, fit.mu, fit.theta, &theta_bound);
            const double theta_change = std::fabs(std::log(new_theta / fit.theta));
            fit.theta = new_theta;
            fit.deviance = nb_deviance(y, fit.mu, fit.theta);
            fit.deviance_trace.emplace_back(fit.theta, fit.deviance);
            if (theta_change < 1e-8 &&
                std::fabs(outer_start_deviance - fit.deviance) <
                    kDevianceTol * (std::fabs(fit.deviance) + 0.1)) {
                fit.converged = true;
                break;
            }
        } else {
            if (std::fabs(outer_start_deviance - fit.deviance) <
                kDevianceTol * (std::fabs(fit.deviance) + 0.1)) {
                fit.converged = true;
                break;
            }
        }
    }

    if (theta_bound) {
        fit.converged = false;
        fit.warning = "dispersion estimate hit the search bound [" +
                      format_double(kThetaMin) + ", " + format_double(kThetaMax) + "]";
    }
    return fit;
}

AnovaTable anova_deviance(const DesignMatrix& design, std::optional<double> fixed_theta) {
    const NbFit full = nb_fit(design.x, design.y, fixed_theta, design.column_names);
    const double theta = full.theta;  // held fixed across the nested fits
    const Eigen::Index n = design.x.rows();

    AnovaTable table;
    table.kind = AnovaTable::Kind::NbDeviance;
    table.n_rows_used = static_cast<size_t>(n);
    table.excluded_rows = design.excluded_rows;
    table.dropped_terms = design.dropped_terms;

    const NbFit null_fit = nb_fit(design.x.leftCols(1), design.y, theta);
    long resid_df = n - 1;
    double resid_dev = null_fit.deviance;

    AnovaRow null_row;
    null_row.term = "NULL";
    null_row.df = 0;
    null_row.value = 0.0;
    null_row.resid_df = resid_df;
    null_row.resid_dev = resid_dev;
    table.rows.push_back(std::move(null_row));

    Eigen::Index ncols = 1;
    for (size_t t = 0; t < design.terms.size(); ++t) {
        const auto cols = design.columns_of_term(t);
        ncols += static_cast<Eigen::Index>(cols.size());
        const NbFit nested = nb_fit(design.x.leftCols(ncols), design.y, theta);

        AnovaRow row;
        row.term = design.terms[t].name();
        row.df = static_cast<long>(cols.size());
        row.value = std::max(0.0, resid_dev - nested.deviance);
        row.statistic = row.value;
        row.p = special::chisq_sf(row.value, static_cast<double>(row.df));
        resid_df -= row.df;
        resid_dev = nested.deviance;
        row.resid_df = resid_df;
        row.resid_dev = resid_dev;
        table.rows.push_back(std::move(row));
    }
    table.df_residual = resid_df;
    table.rss = resid_dev;
    return table;
}

AnovaTable anova_deviance(std::span<const clean::AnalysisRecord> records,
                          const Formula& formula, std::optional<double> fixed_theta) {
    return anova_deviance(encode_design(records, formula), fixed_theta);
}

}  // namespace incistat::model
