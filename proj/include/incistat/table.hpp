#pragma once

#include <optional>
#include <string>
#include <vector>

#include "incistat/linear.hpp"
#include "incistat/negbin.hpp"
#include "incistat/stats.hpp"
#include "incistat/trend.hpp"

namespace incistat::report {

enum class TableFormat { Markdown, Csv };

/// Rectangular document of pre-formatted cells. Rendering is byte
/// deterministic for fixed content.
struct TableDoc {
    std::string title;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

/// Stars follow the usual convention: p < 0.001 "***", p < 0.01 "**",
/// p < 0.05 "*"; boundaries are strict.
std::string significance_stars(double p);

/// 4 significant digits.
std::string format_value(double value);

/// p-values below 2.2e-16 render as "< 2.2e-16"; otherwise 4 significant
/// digits. Stars are appended when `with_stars`.
std::string format_p(double p, bool with_stars = true);

std::string render_table(const TableDoc& doc, TableFormat format);

// Builders from analysis results.
TableDoc anova_table_doc(const model::AnovaTable& table, const std::string& title);
TableDoc descriptives_doc(const stats::Descriptives& d, const std::string& title);
TableDoc gof_doc(const stats::GofResult& gof, const std::string& title);
TableDoc welch_doc(const stats::WelchResult& w, const std::string& title);
TableDoc normality_doc(const stats::NormalityResult& n, const std::string& title);
TableDoc rank_test_doc(const stats::RankTestResult& r, const std::string& title);
TableDoc posthoc_doc(const std::vector<stats::PosthocRow>& rows, const std::string& title);
TableDoc coefficients_doc(const model::LinearFit& fit, const std::string& title);
TableDoc nb_coefficients_doc(const model::NbFit& fit, const std::string& title);
TableDoc vif_doc(const std::vector<model::VifEntry>& entries, const std::string& title);
TableDoc trend_doc(const model::TrendFit& linear, const model::TrendFit& exponential,
                   int first_year, const std::string& title);
TableDoc frequency_doc(const std::vector<std::pair<std::string, size_t>>& counts,
                       size_t total, const std::string& title);

}  // namespace incistat::report
