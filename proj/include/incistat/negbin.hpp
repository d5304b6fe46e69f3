#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "incistat/design.hpp"
#include "incistat/linear.hpp"

namespace incistat::model {

/// Dispersion in both common parameterizations: theta is the size parameter,
/// alpha = 1/theta the over-dispersion, giving Var(Y) = mu + alpha * mu^2.
struct NbParams {
    double theta = 1.0;
    double alpha() const { return 1.0 / theta; }
};

struct NbFit {
    Eigen::VectorXd beta;
    Eigen::VectorXd mu;  // fitted means, exp(X beta)
    double deviance = 0.0;
    double theta = 1.0;
    int iterations = 0;
    bool converged = false;
    std::string warning;  // set when the theta search hits a bound
    /// Accepted IRLS iterates as (theta, deviance); within a fixed-theta
    /// stage the deviance is non-increasing by construction.
    std::vector<std::pair<double, double>> deviance_trace;
    std::vector<std::string> column_names;
};

inline constexpr double kThetaMin = 1e-4;
inline constexpr double kThetaMax = 1e8;

/// Log-link negative binomial regression. IRLS for beta with working weights
/// mu / (1 + mu/theta); theta by profile maximum likelihood (Newton steps in
/// log-theta with step halving) unless fixed_theta is given. Converged when
/// the relative deviance change drops below 1e-8 or after 50 outer rounds.
/// Throws DataError when y has negative/non-integer entries or is all zero;
/// a diverging fit returns converged=false with the last iterate.
NbFit nb_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
             std::optional<double> fixed_theta = std::nullopt,
             const std::vector<std::string>& column_names = {});

double nb_deviance(const Eigen::VectorXd& y, const Eigen::VectorXd& mu, double theta);
double nb_log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& mu, double theta);

/// Sequential analysis of deviance. Theta is held at the full-model estimate
/// across the nested fits; the NULL row carries the intercept-only fit.
AnovaTable anova_deviance(std::span<const clean::AnalysisRecord> records,
                          const Formula& formula,
                          std::optional<double> fixed_theta = std::nullopt);
AnovaTable anova_deviance(const DesignMatrix& design,
                          std::optional<double> fixed_theta = std::nullopt);

}  // namespace incistat::model
