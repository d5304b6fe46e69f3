#pragma once

#include <span>
#include <string>
#include <vector>

namespace incistat::stats {

struct Descriptives {
    size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double mode = 0.0;  // most frequent value; smallest value wins ties
    double sd = 0.0;    // sample standard deviation (n-1 denominator)
    double min = 0.0;
    double max = 0.0;
    size_t missing_count = 0;
};

enum class Direction { Higher, Lower };

struct GofCategory {
    std::string label;
    double observed = 0.0;
    double expected = 0.0;
    double residual = 0.0;  // Pearson residual (O - E) / sqrt(E)
    Direction direction = Direction::Higher;
};

struct GofResult {
    double chi2 = 0.0;
    int df = 0;
    double p = 1.0;
    std::vector<GofCategory> categories;
};

struct NormalityResult {
    double w = 0.0;
    double p = 0.0;
    size_t n = 0;
};

struct WelchResult {
    double t = 0.0;
    double df = 0.0;  // Welch-Satterthwaite, fractional
    double p = 1.0;
    double ci_low = 0.0;   // 95% CI for mean_x - mean_y
    double ci_high = 0.0;
    double mean_x = 0.0;
    double mean_y = 0.0;
};

struct RankTestResult {
    double h = 0.0;  // tie-corrected
    int df = 0;
    double p = 1.0;
};

struct PosthocRow {
    std::string group_a;
    std::string group_b;
    double z = 0.0;
    double p_unadj = 1.0;
    double p_adj = 1.0;
};

/// Throws DataError on empty input.
Descriptives describe(std::span<const double> values, size_t missing_count = 0);

/// Chi-square goodness of fit. Empty `expected` means uniform (mean of
/// observed counts). Pearson residual per cell; p from the upper chi-square
/// tail at df = k - 1.
GofResult chi_square_gof(std::span<const double> observed,
                         std::span<const std::string> labels,
                         std::span<const double> expected = {});

/// Shapiro-Wilk W and p-value per Royston's AS R94 approximation.
/// Requires 3 <= n <= 5000 and nonzero range.
NormalityResult shapiro_wilk(std::span<const double> values);

WelchResult welch_t(std::span<const double> x, std::span<const double> y);

RankTestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

/// Dunn (1964) pairwise z tests on the shared mid-ranks, tie-adjusted
/// variance, two-sided normal p, Bonferroni-adjusted over all g(g-1)/2 pairs.
std::vector<PosthocRow> dunn_posthoc(const std::vector<std::vector<double>>& groups,
                                     std::span<const std::string> labels);

std::vector<double> bonferroni(std::span<const double> p_values, size_t m);

}  // namespace incistat::stats
