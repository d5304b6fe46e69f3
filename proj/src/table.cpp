#include "incistat/table.hpp"

#include <cmath>
#include <cstdio>

#include "incistat/csv.hpp"

namespace incistat::report {

namespace {

constexpr double kPFloor = 2.2e-16;

std::string row_label_or(const std::optional<long>& v) {
    return v ? std::to_string(*v) : std::string();
}

}  // namespace

std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "";
}

std::string format_value(double value) {
    if (!std::isfinite(value)) return value > 0 ? "Inf" : (value < 0 ? "-Inf" : "NaN");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", value);
    return buf;
}

std::string format_p(double p, bool with_stars) {
    std::string text = p < kPFloor ? "< 2.2e-16" : format_value(p);
    if (with_stars) {
        const std::string stars = significance_stars(p);
        if (!stars.empty()) text += " " + stars;
    }
    return text;
}

std::string render_table(const TableDoc& doc, TableFormat format) {
    std::string out;
    if (format == TableFormat::Markdown) {
        if (!doc.title.empty()) out += "# " + doc.title + "\n\n";
        out += "|";
        for (const auto& h : doc.headers) out += " " + h + " |";
        out += "\n|";
        for (size_t i = 0; i < doc.headers.size(); ++i) out += "---|";
        out += "\n";
        for (const auto& row : doc.rows) {
            out += "|";
            for (const auto& cell : row) out += " " + cell + " |";
            out += "\n";
        }
        return out;
    }
    out += csv::write_row(doc.headers);
    for (const auto& row : doc.rows) out += csv::write_row(row);
    return out;
}

TableDoc anova_table_doc(const model::AnovaTable& table, const std::string& title) {
    TableDoc doc;
    doc.title = title;
    if (table.kind == model::AnovaTable::Kind::OlsType1) {
        doc.headers = {"Variable", "Df", "Sum Sq", "Mean Sq", "F value", "Pr(>F)"};
        for (const auto& row : table.rows) {
            doc.rows.push_back({row.term, std::to_string(row.df), format_value(row.value),
                                row.mean_sq ? format_value(*row.mean_sq) : "",
                                row.statistic ? format_value(*row.statistic) : "",
                                row.p ? format_p(*row.p) : ""});
        }
        doc.rows.push_back({"Residuals", std::to_string(table.df_residual),
                            format_value(table.rss),
                            table.df_residual > 0
                                ? format_value(table.rss / static_cast<double>(table.df_residual))
                                : "",
                            "", ""});
    } else {
        doc.headers = {"Variable", "Df", "Deviance", "Resid. Df", "Resid. Dev", "Pr(>Chi)"};
        for (const auto& row : table.rows) {
            const bool is_null = row.term == "NULL";
            doc.rows.push_back({row.term, is_null ? "" : std::to_string(row.df),
                                is_null ? "" : format_value(row.value),
                                row_label_or(row.resid_df),
                                row.resid_dev ? format_value(*row.resid_dev) : "",
                                row.p ? format_p(*row.p) : ""});
        }
    }
    return doc;
}

TableDoc descriptives_doc(const stats::Descriptives& d, const std::string& title) {
    TableDoc doc;
    doc.title = title;
    doc.headers = {"Statistic", "Value"};
    doc.rows = {
        {"N", std::to_string(d.n)},
        {"Mean", format_value(d.mean)},
        {"Median", format_value(d.median)},
        {"Mode", format_value(d.mode)},
        {"Standard Deviation", format_value(d.sd)},
        {"Minimum", format_value(d.min)},
        {"Maximum", format_value(d.max)},
        {"NA Count", std::to_string(d.missing_count)},
    };
    return doc;
}

TableDoc gof_doc(const stats::GofResult& gof, const std::string& title) {
    TableDoc doc;
    doc.title = title + " (chi-square = " + format_value(gof.chi2) +
                ", df = " + std::to_string(gof.df) + ", p " +
                (gof.p < kPFloor ? "< 2.2e-16" : "= " + format_value(gof.p)) + ")";
    doc.headers = {"Category", "Observed", "Expected", "Residual", "Higher/Lower"};
    for (const auto& c : gof.categories) {
        doc.rows.push_back({c.label, format_value(c.observed), format_value(c.expected),
                            format_value(c.residual),
                            c.direction == stats::Direction::Higher ? "Higher" : "Lower"});
    }
    return doc;
}

TableDoc welch_doc(const stats::WelchResult& w, const std::string& title) {
    TableDoc doc;
    doc.title = title;
    doc.headers = {"Metric", "Value"};
    doc.rows = {
        {"t-value", format_value(w.t)},
        {"Degrees of freedom", format_value(w.df)},
        {"p-value", format_p(w.p)},
        {"95% CI lower", format_value(w.ci_low)},
        {"95% CI upper", format_value(w.ci_high)},
        {"Mean of group x", format_value(w.mean_x)},
        {"Mean of group y", format_value(w.mean_y)},
    };
    return doc;
}

TableDoc normality_doc(const stats::NormalityResult& n, const std::string& title) {
    TableDoc doc;
    doc.title = title;
    doc.headers = {"Statistic", "Value"};
    doc.rows = {
        {"W", format_value(n.w)},
        {"p-value", format_p(n.p)},
        {"N", std::to_string(n.n)},
    };
    return doc;
}

TableDoc rank_test_doc(const stats::RankTestResult& r, const std::string& title) {
    TableDoc doc;
    doc.title = title;
    doc.headers = {"Statistic", "Value"};
    doc.rows = {
        {"H (tie-corrected)", format_value(r.h)},
        {"Df", std::to_string(r.df)},
        {"p-value", format_p(r.p)},
    };
    return doc;
}

TableDoc posthoc_doc(const std::vector<stats::PosthocRow>& rows, const std::string& title) {
    TableDoc doc;
    doc.title = title;
    doc.headers = {"Comparison", "Z value", "P.unadj", "P.adj"};
    for (const auto& r : rows) {
        doc.rows.push_back({r.group_a + " - " + r.group_b, format_value(r.z),
                            format_p(r.p_unadj, false), format_p(r.p_adj)});
    }
    return doc;
}

TableDoc coefficients_doc(const model::LinearFit& fit, const std::string& title) {
    TableDoc doc;
    doc.title = title;
    doc.headers = {"Coefficient", "Estimate", "Std. Error"};
    for (Eigen::Index i = 0; i < fit.beta.size(); ++i) {
        const std::string name = static_cast<size_t>(i) < fit.column_names.size()
                                     ? fit.column_names[static_cast<size_t>(i)]
                                     : "b" + std::to_string(i);
        doc.rows.push_back(
            {name, format_value(fit.beta[i]), format_value(fit.standard_errors[i])});
    }
    doc.rows.push_back({"Residual SS", format_value(fit.rss), ""});
    doc.rows.push_back({"Residual Df", std::to_string(fit.df_residual), ""});
    return doc;
}

TableDoc nb_coefficients_doc(const model::NbFit& fit, const std::string& title) {
    TableDoc doc;
    doc.title = title;
    doc.headers = {"Coefficient", "Estimate"};
    for (Eigen::Index i = 0; i < fit.beta.size(); ++i) {
        const std::string name = static_cast<size_t>(i) < fit.column_names.size()
                                     ? fit.column_names[static_cast<size_t>(i)]
                                     : "b" + std::to_string(i);
        doc.rows.push_back({name, format_value(fit.beta[i])});
    }
    doc.rows.push_back({"theta", format_value(fit.theta)});
    doc.rows.push_back({"alpha (1/theta)", format_value(1.0 / fit.theta)});
    doc.rows.push_back({"Deviance", format_value(fit.deviance)});
    doc.rows.push_back({"Iterations", std::to_string(fit.iterations)});
    doc.rows.push_back({"Converged", fit.converged ? "yes" : "no"});
    if (!fit.warning.empty()) doc.rows.push_back({"Warning", fit.warning});
    return doc;
}

TableDoc vif_doc(const std::vector<model::VifEntry>& entries, const std::string& title) {
    TableDoc doc;
    doc.title = title;
    doc.headers = {"Column", "VIF"};
    for (const auto& e : entries) doc.rows.push_back({e.column, format_value(e.vif)});
    return doc;
}

TableDoc trend_doc(const model::TrendFit& linear, const model::TrendFit& exponential,
                   int first_year, const std::string& title) {
    TableDoc doc;
    doc.title = title;
    doc.headers = {"Model", "Equation (t = years since " + std::to_string(first_year) + ")",
                   "RSS"};
    doc.rows.push_back({"linear",
                        "y = " + format_value(linear.slope) + "*t + " +
                            format_value(linear.intercept),
                        format_value(linear.rss)});
    doc.rows.push_back({"exponential",
                        "y = " + format_value(exponential.a) + " + " +
                            format_value(exponential.b) + "*exp(" +
                            format_value(exponential.c) + "*t)",
                        format_value(exponential.rss)});
    return doc;
}

TableDoc frequency_doc(const std::vector<std::pair<std::string, size_t>>& counts,
                       size_t total, const std::string& title) {
    TableDoc doc;
    doc.title = title;
    doc.headers = {"Category", "Count", "Percentage"};
    for (const auto& [label, count] : counts) {
        const double pct =
            total > 0 ? 100.0 * static_cast<double>(count) / static_cast<double>(total) : 0.0;
        doc.rows.push_back({label, std::to_string(count), format_value(pct)});
    }
    return doc;
}

}  // namespace incistat::report
