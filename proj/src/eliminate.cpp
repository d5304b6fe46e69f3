#include "incistat/eliminate.hpp"

#include <algorithm>

#include "incistat/special.hpp"

namespace incistat::model {

namespace {

Eigen::MatrixXd without_term(const DesignMatrix& design, size_t term_index) {
    const auto drop = design.columns_of_term(term_index);
    Eigen::MatrixXd out(design.x.rows(), design.x.cols() - static_cast<Eigen::Index>(drop.size()));
    Eigen::Index c = 0;
    for (Eigen::Index j = 0; j < design.x.cols(); ++j) {
        if (std::find(drop.begin(), drop.end(), static_cast<size_t>(j)) != drop.end()) continue;
        out.col(c++) = design.x.col(j);
    }
    return out;
}

}  // namespace

EliminationResult eliminate_insignificant(std::span<const clean::AnalysisRecord> records,
                                          const Formula& formula, double alpha,
                                          FitKind kind, std::optional<double> fixed_theta) {
    if (alpha <= 0.0 || alpha >= 1.0)
        throw DataError("eliminate_insignificant: alpha outside (0,1)");

    EliminationResult result;
    result.formula = formula;
    int step = 0;

    while (result.formula.terms.size() > 1) {
        const DesignMatrix design = encode_design(records, result.formula);

        double full_rss = 0.0;
        long full_df_residual = 0;
        double full_deviance = 0.0;
        double theta = 0.0;
        if (kind == FitKind::Ols) {
            const LinearFit full = ols_fit(design.x, design.y, design.column_names);
            full_rss = full.rss;
            full_df_residual = full.df_residual;
        } else {
            const NbFit full = nb_fit(design.x, design.y, fixed_theta, design.column_names);
            full_deviance = full.deviance;
            theta = full.theta;
        }

        // A term stays untouchable while a surviving interaction contains it.
        double worst_p = -1.0;
        size_t worst_term = 0;
        for (size_t t = 0; t < design.terms.size(); ++t) {
            const bool nested = std::any_of(
                design.terms.begin(), design.terms.end(),
                [&](const Term& other) { return other.strictly_contains(design.terms[t]); });
            if (nested) continue;

            const Eigen::MatrixXd reduced = without_term(design, t);
            const long df = static_cast<long>(design.term_df(t));
            double p = 1.0;
            if (kind == FitKind::Ols) {
                Eigen::HouseholderQR<Eigen::MatrixXd> qr(reduced);
                const double reduced_rss = (design.y - reduced * qr.solve(design.y)).squaredNorm();
                if (full_df_residual > 0 && full_rss > 0.0) {
                    const double f = (reduced_rss - full_rss) / static_cast<double>(df) /
                                     (full_rss / static_cast<double>(full_df_residual));
                    p = special::f_sf(std::max(0.0, f), static_cast<double>(df),
                                      static_cast<double>(full_df_residual));
                } else {
                    p = reduced_rss > full_rss + 1e-12 ? 0.0 : 1.0;
                }
            } else {
                const NbFit nested_fit = nb_fit(reduced, design.y, theta);
                const double delta = std::max(0.0, nested_fit.deviance - full_deviance);
                p = special::chisq_sf(delta, static_cast<double>(df));
            }
            if (p > worst_p) {
                worst_p = p;
                worst_term = t;
            }
        }

        if (worst_p <= alpha) break;

        const Term& dropped = design.terms[worst_term];
        result.trail.push_back({++step, dropped.name(), worst_p});
        auto& terms = result.formula.terms;
        terms.erase(std::remove_if(terms.begin(), terms.end(),
                                   [&](const Term& t) { return t.same_as(dropped); }),
                    terms.end());
    }
    return result;
}

}  // namespace incistat::model
