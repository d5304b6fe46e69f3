#include "incistat/linear.hpp"

#include <cmath>
#include <limits>

#include "incistat/special.hpp"

namespace incistat::model {

namespace {

double centered_tss(const Eigen::VectorXd& y) {
    const double mean = y.mean();
    return (y.array() - mean).square().sum();
}

}  // namespace

LinearFit ols_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                  const std::vector<std::string>& column_names) {
    if (x.rows() != y.size()) throw DataError("ols_fit: row count mismatch");
    if (x.rows() < x.cols()) throw DataError("ols_fit: fewer rows than columns");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    if (qr.rank() < x.cols()) {
        std::string aliased;
        const auto perm = qr.colsPermutation().indices();
        for (Eigen::Index k = qr.rank(); k < x.cols(); ++k) {
            if (!aliased.empty()) aliased += ", ";
            const auto col = static_cast<size_t>(perm[k]);
            aliased += col < column_names.size() ? column_names[col]
                                                 : "column " + std::to_string(col);
        }
        throw RankError("ols_fit: design is rank deficient; aliased columns: " + aliased);
    }

    LinearFit fit;
    fit.column_names = column_names;
    fit.beta = qr.solve(y);
    fit.residuals = y - x * fit.beta;
    fit.rss = fit.residuals.squaredNorm();
    fit.tss = centered_tss(y);
    fit.df_residual = x.rows() - x.cols();

    // cov(beta) = s^2 (X'X)^-1 = s^2 P R^-1 R^-T P'
    const double s2 = fit.df_residual > 0 ? fit.rss / static_cast<double>(fit.df_residual) : 0.0;
    const Eigen::MatrixXd r =
        qr.matrixR().topLeftCorner(x.cols(), x.cols()).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(x.cols(), x.cols()));
    const Eigen::MatrixXd unscaled = r_inv * r_inv.transpose();
    const auto perm = qr.colsPermutation();
    const Eigen::MatrixXd cov = perm * unscaled * perm.transpose() * s2;
    fit.standard_errors = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
    return fit;
}

AnovaTable anova_type1(const DesignMatrix& design) {
    // The full fit validates rank; prefixes of an independent column set
    // stay independent, so the nested fits below cannot fail.
    const LinearFit full = ols_fit(design.x, design.y, design.column_names);

    AnovaTable table;
    table.kind = AnovaTable::Kind::OlsType1;
    table.rss = full.rss;
    table.tss = full.tss;
    table.df_residual = full.df_residual;
    table.n_rows_used = static_cast<size_t>(design.x.rows());
    table.excluded_rows = design.excluded_rows;
    table.dropped_terms = design.dropped_terms;

    const double resid_ms =
        full.df_residual > 0 ? full.rss / static_cast<double>(full.df_residual)
                             : std::numeric_limits<double>::quiet_NaN();

    double prev_rss = full.tss;  // intercept-only model
    Eigen::Index ncols = 1;
    for (size_t t = 0; t < design.terms.size(); ++t) {
        const auto cols = design.columns_of_term(t);
        ncols += static_cast<Eigen::Index>(cols.size());
        const Eigen::MatrixXd sub = design.x.leftCols(ncols);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(sub);
        const double rss = (design.y - sub * qr.solve(design.y)).squaredNorm();

        AnovaRow row;
        row.term = design.terms[t].name();
        row.df = static_cast<long>(cols.size());
        row.value = std::max(0.0, prev_rss - rss);
        row.mean_sq = row.value / static_cast<double>(row.df);
        if (full.df_residual > 0) {
            row.statistic = *row.mean_sq / resid_ms;
            row.p = special::f_sf(*row.statistic, static_cast<double>(row.df),
                                  static_cast<double>(full.df_residual));
        }
        table.rows.push_back(std::move(row));
        prev_rss = rss;
    }
    return table;
}

AnovaTable anova_type1(std::span<const clean::AnalysisRecord> records, const Formula& formula) {
    return anova_type1(encode_design(records, formula));
}

std::vector<VifEntry> vif(const Eigen::MatrixXd& x,
                          const std::vector<std::string>& column_names) {
    if (x.cols() < 3)
        throw DataError("vif: need at least two predictors besides the intercept");
    std::vector<VifEntry> out;
    for (Eigen::Index j = 1; j < x.cols(); ++j) {
        Eigen::MatrixXd others(x.rows(), x.cols() - 1);
        Eigen::Index c = 0;
        for (Eigen::Index k = 0; k < x.cols(); ++k) {
            if (k == j) continue;
            others.col(c++) = x.col(k);
        }
        const Eigen::VectorXd target = x.col(j);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(others);
        const double rss = (target - others * qr.solve(target)).squaredNorm();
        const double tss = centered_tss(target);

        VifEntry entry;
        entry.column = static_cast<size_t>(j) < column_names.size()
                           ? column_names[static_cast<size_t>(j)]
                           : "column " + std::to_string(j);
        if (tss <= 0.0 || rss <= tss * 1e-12) {
            entry.vif = std::numeric_limits<double>::infinity();
        } else {
            entry.vif = tss / rss;  // 1 / (1 - R^2)
        }
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace incistat::model
