#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "incistat/design.hpp"

namespace incistat::model {

class RankError : public DataError {
  public:
    using DataError::DataError;
};

struct LinearFit {
    Eigen::VectorXd beta;
    Eigen::VectorXd residuals;
    Eigen::VectorXd standard_errors;
    double rss = 0.0;
    double tss = 0.0;  // centered total sum of squares
    long df_residual = 0;
    std::vector<std::string> column_names;
};

/// Least squares via column-pivoted Householder QR. Throws RankError when the
/// design is rank deficient, listing the aliased columns.
LinearFit ols_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                  const std::vector<std::string>& column_names = {});

struct AnovaRow {
    std::string term;
    long df = 0;
    double value = 0.0;                 // sum of squares (OLS) or deviance (GLM)
    std::optional<double> mean_sq;      // OLS only
    std::optional<double> statistic;    // F or deviance chi-square
    std::optional<double> p;
    std::optional<long> resid_df;       // analysis of deviance only
    std::optional<double> resid_dev;    // analysis of deviance only
};

struct AnovaTable {
    enum class Kind { OlsType1, NbDeviance };
    Kind kind = Kind::OlsType1;
    std::vector<AnovaRow> rows;
    long df_residual = 0;
    double rss = 0.0;           // residual SS (OLS) / residual deviance (GLM)
    double tss = 0.0;           // OLS only
    size_t n_rows_used = 0;
    size_t excluded_rows = 0;
    std::vector<std::string> dropped_terms;
};

/// Sequential (Type I) ANOVA: each term's SS is the RSS drop from adding it
/// after all preceding terms; F against the full-model residual mean square.
AnovaTable anova_type1(std::span<const clean::AnalysisRecord> records, const Formula& formula);
AnovaTable anova_type1(const DesignMatrix& design);

struct VifEntry {
    std::string column;
    double vif = 0.0;  // +inf sentinel for perfect collinearity
};

/// Per-column variance inflation factors, excluding the intercept.
std::vector<VifEntry> vif(const Eigen::MatrixXd& x,
                          const std::vector<std::string>& column_names);

}  // namespace incistat::model
