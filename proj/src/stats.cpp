#include "incistat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "incistat/common.hpp"
#include "incistat/special.hpp"

namespace incistat::stats {

namespace {

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (const double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double median_sorted(std::span<const double> sorted) {
    const size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

// Mid-ranks of the pooled sample plus the tie-correction sum T = sum(t^3 - t).
struct PooledRanks {
    std::vector<double> ranks;  // aligned with the pooled input order
    double tie_sum = 0.0;
};

PooledRanks mid_ranks(std::span<const double> pooled) {
    const size_t n = pooled.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return pooled[a] < pooled[b]; });
    PooledRanks out;
    out.ranks.assign(n, 0.0);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (size_t k = i; k <= j; ++k) out.ranks[order[k]] = shared;
        const double t = static_cast<double>(j - i + 1);
        out.tie_sum += t * t * t - t;
        i = j + 1;
    }
    return out;
}

double poly(const double* coef, int n, double x) {
    double value = coef[0];
    double p = 1.0;
    for (int i = 1; i < n; ++i) {
        p *= x;
        value += coef[i] * p;
    }
    return value;
}

}  // namespace

Descriptives describe(std::span<const double> values, size_t missing_count) {
    if (values.empty()) throw DataError("describe: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    Descriptives d;
    d.n = values.size();
    d.missing_count = missing_count;
    d.mean = mean_of(values);
    d.median = median_sorted(sorted);
    d.sd = sample_sd(values, d.mean);
    d.min = sorted.front();
    d.max = sorted.back();

    // Most frequent value; the smallest modal value wins on ties.
    d.mode = sorted.front();
    size_t best = 0;
    size_t i = 0;
    while (i < sorted.size()) {
        size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        if (j - i + 1 > best) {
            best = j - i + 1;
            d.mode = sorted[i];
        }
        i = j + 1;
    }
    return d;
}

GofResult chi_square_gof(std::span<const double> observed,
                         std::span<const std::string> labels,
                         std::span<const double> expected) {
    if (observed.size() < 2) throw DataError("chi_square_gof: need at least two categories");
    if (!labels.empty() && labels.size() != observed.size())
        throw DataError("chi_square_gof: label/observed length mismatch");
    std::vector<double> exp_values;
    if (expected.empty()) {
        exp_values.assign(observed.size(), mean_of(observed));
    } else {
        if (expected.size() != observed.size())
            throw DataError("chi_square_gof: expected/observed length mismatch");
        exp_values.assign(expected.begin(), expected.end());
    }

    GofResult out;
    out.df = static_cast<int>(observed.size()) - 1;
    for (size_t i = 0; i < observed.size(); ++i) {
        if (exp_values[i] <= 0.0)
            throw DataError("chi_square_gof: expected count is zero in category " +
                            (labels.empty() ? std::to_string(i + 1) : labels[i]));
        GofCategory cat;
        cat.label = labels.empty() ? std::to_string(i + 1) : labels[i];
        cat.observed = observed[i];
        cat.expected = exp_values[i];
        cat.residual = (observed[i] - exp_values[i]) / std::sqrt(exp_values[i]);
        cat.direction = observed[i] > exp_values[i] ? Direction::Higher : Direction::Lower;
        out.chi2 += cat.residual * cat.residual;
        out.categories.push_back(std::move(cat));
    }
    out.p = special::chisq_sf(out.chi2, out.df);
    return out;
}

NormalityResult shapiro_wilk(std::span<const double> values) {
    // Royston (1995), algorithm AS R94, uncensored samples.
    const size_t n = values.size();
    if (n < 3 || n > 5000) throw DataError("shapiro_wilk: sample size outside [3, 5000]");

    std::vector<double> x(values.begin(), values.end());
    std::sort(x.begin(), x.end());
    const double range = x.back() - x.front();
    if (range <= 0.0) throw DataError("shapiro_wilk: zero variance");

    static constexpr double c1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
    static constexpr double c2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    static constexpr double c3[4] = {0.544, -0.39978, 0.025054, -6.714e-4};
    static constexpr double c4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static constexpr double c5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static constexpr double c6[3] = {-0.4803, -0.082676, 0.0030302};
    static constexpr double g[2] = {-2.273, 0.459};
    constexpr double pi6 = 1.90985931710274;   // 6/pi
    constexpr double stqr = 1.04719755119660;  // asin(sqrt(3/4))

    const double an = static_cast<double>(n);
    const size_t n2 = n / 2;
    std::vector<double> a(n2, 0.0);

    if (n == 3) {
        a[0] = std::numbers::sqrt2 / 2.0;
    } else {
        const double an25 = an + 0.25;
        double summ2 = 0.0;
        for (size_t i = 0; i < n2; ++i) {
            a[i] = special::normal_quantile((static_cast<double>(i + 1) - 0.375) / an25);
            summ2 += a[i] * a[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(an);
        const double a1 = poly(c1, 6, rsn) - a[0] / ssumm2;
        size_t i1;
        double fac;
        if (n > 5) {
            i1 = 2;
            const double a2 = -a[1] / ssumm2 + poly(c2, 6, rsn);
            fac = std::sqrt((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            a[0] = a1;
            a[1] = a2;
        } else {
            i1 = 1;
            fac = std::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
            a[0] = a1;
        }
        for (size_t i = i1; i < n2; ++i) a[i] = -a[i] / fac;
    }

    // W is the squared correlation between the data and the antisymmetric
    // weight vector (-a[0], ..., 0, ..., a[0]); data scaled by the range.
    const double x0 = x.front();
    double sx = 0.0;
    for (const double v : x) sx += (v - x0) / range;
    sx /= an;
    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double w_i = 0.0;
        if (i < n2)
            w_i = -a[i];
        else if (i >= n - n2)
            w_i = a[n - 1 - i];
        const double xsx = (x[i] - x0) / range - sx;
        ssa += w_i * w_i;
        ssx += xsx * xsx;
        sax += w_i * xsx;
    }
    const double ssassx = std::sqrt(ssa * ssx);
    const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    const double w = 1.0 - w1;

    NormalityResult out;
    out.n = n;
    out.w = w;

    if (n == 3) {
        out.p = std::clamp(pi6 * (std::asin(std::sqrt(w)) - stqr), 0.0, 1.0);
        return out;
    }
    const double y = std::log1p(-w);
    const double log_n = std::log(an);
    double m, s;
    if (n <= 11) {
        const double gamma = poly(g, 2, an);
        if (y >= gamma) {
            out.p = 1e-99;
            return out;
        }
        const double y2 = -std::log(gamma - y);
        m = poly(c3, 4, an);
        s = std::exp(poly(c4, 4, an));
        out.p = 1.0 - special::normal_cdf((y2 - m) / s);
        return out;
    }
    m = poly(c5, 4, log_n);
    s = std::exp(poly(c6, 3, log_n));
    out.p = 1.0 - special::normal_cdf((y - m) / s);
    return out;
}

WelchResult welch_t(std::span<const double> x, std::span<const double> y) {
    if (x.size() < 2 || y.size() < 2) throw DataError("welch_t: each group needs n >= 2");
    WelchResult out;
    out.mean_x = mean_of(x);
    out.mean_y = mean_of(y);
    const double vx = sample_sd(x, out.mean_x);
    const double vy = sample_sd(y, out.mean_y);
    const double sx2 = vx * vx / static_cast<double>(x.size());
    const double sy2 = vy * vy / static_cast<double>(y.size());
    const double se2 = sx2 + sy2;
    if (se2 <= 0.0) throw DataError("welch_t: both groups have zero variance");

    out.t = (out.mean_x - out.mean_y) / std::sqrt(se2);
    out.df = se2 * se2 /
             (sx2 * sx2 / static_cast<double>(x.size() - 1) +
              sy2 * sy2 / static_cast<double>(y.size() - 1));
    out.p = special::t_two_sided(out.t, out.df);
    const double tq = special::t_quantile(0.975, out.df);
    const double diff = out.mean_x - out.mean_y;
    out.ci_low = diff - tq * std::sqrt(se2);
    out.ci_high = diff + tq * std::sqrt(se2);
    return out;
}

RankTestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw DataError("kruskal_wallis: need at least two groups");
    std::vector<double> pooled;
    for (const auto& grp : groups) {
        if (grp.empty()) throw DataError("kruskal_wallis: empty group");
        pooled.insert(pooled.end(), grp.begin(), grp.end());
    }

    const auto ranked = mid_ranks(pooled);
    const double n = static_cast<double>(pooled.size());
    const double n3 = n * n * n - n;
    if (ranked.tie_sum >= n3) throw DataError("kruskal_wallis: no variance in ranks");

    RankTestResult out;
    out.df = static_cast<int>(groups.size()) - 1;
    size_t offset = 0;
    double h = 0.0;
    for (const auto& grp : groups) {
        double rank_sum = 0.0;
        for (size_t i = 0; i < grp.size(); ++i) rank_sum += ranked.ranks[offset + i];
        offset += grp.size();
        h += rank_sum * rank_sum / static_cast<double>(grp.size());
    }
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);
    h /= 1.0 - ranked.tie_sum / n3;
    out.h = std::max(0.0, h);
    out.p = special::chisq_sf(out.h, out.df);
    return out;
}

std::vector<PosthocRow> dunn_posthoc(const std::vector<std::vector<double>>& groups,
                                     std::span<const std::string> labels) {
    if (groups.size() < 2) throw DataError("dunn_posthoc: need at least two groups");
    if (!labels.empty() && labels.size() != groups.size())
        throw DataError("dunn_posthoc: label/group length mismatch");
    std::vector<double> pooled;
    for (const auto& grp : groups) {
        if (grp.empty()) throw DataError("dunn_posthoc: empty group");
        pooled.insert(pooled.end(), grp.begin(), grp.end());
    }

    const auto ranked = mid_ranks(pooled);
    const double n = static_cast<double>(pooled.size());

    std::vector<double> rank_means;
    size_t offset = 0;
    for (const auto& grp : groups) {
        double rank_sum = 0.0;
        for (size_t i = 0; i < grp.size(); ++i) rank_sum += ranked.ranks[offset + i];
        offset += grp.size();
        rank_means.push_back(rank_sum / static_cast<double>(grp.size()));
    }

    const double variance_base = n * (n + 1.0) / 12.0 - ranked.tie_sum / (12.0 * (n - 1.0));
    const size_t g = groups.size();
    const size_t m = g * (g - 1) / 2;

    std::vector<PosthocRow> rows;
    for (size_t i = 0; i < g; ++i) {
        for (size_t j = i + 1; j < g; ++j) {
            PosthocRow row;
            row.group_a = labels.empty() ? std::to_string(i + 1) : labels[i];
            row.group_b = labels.empty() ? std::to_string(j + 1) : labels[j];
            const double se = std::sqrt(variance_base * (1.0 / static_cast<double>(groups[i].size()) +
                                                         1.0 / static_cast<double>(groups[j].size())));
            row.z = (rank_means[i] - rank_means[j]) / se;
            row.p_unadj = 2.0 * (1.0 - special::normal_cdf(std::fabs(row.z)));
            row.p_adj = std::min(1.0, static_cast<double>(m) * row.p_unadj);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<double> bonferroni(std::span<const double> p_values, size_t m) {
    std::vector<double> out;
    out.reserve(p_values.size());
    for (const double p : p_values) out.push_back(std::min(1.0, static_cast<double>(m) * p));
    return out;
}

}  // namespace incistat::stats
