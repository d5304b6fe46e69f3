#include <doctest.h>

#include <cmath>
#include <random>

#include "incistat/common.hpp"
#include "incistat/special.hpp"

using namespace incistat;

namespace {

struct RefPoint {
    double x;
    double expected;
};

}  // namespace

TEST_CASE("normal_cdf matches high-precision reference points") {
    // Reference values computed with 40-digit arithmetic.
    const RefPoint pts[] = {
        {-3.0, 0.0013498980316300945267},  {-1.0, 0.15865525393145705141},
        {-0.5, 0.30853753872598689636},    {0.0, 0.5},
        {0.5, 0.69146246127401310364},     {1.0, 0.84134474606854294859},
        {1.96, 0.97500210485177956379},    {3.0, 0.99865010196836990547},
        {5.5, 0.99999998101043753411},
    };
    for (const auto& pt : pts) {
        CHECK(std::fabs(special::normal_cdf(pt.x) - pt.expected) < 1e-10);
    }
    CHECK_THROWS_AS(special::normal_cdf(std::nan("")), DataError);
}

TEST_CASE("chisq_cdf matches reference points") {
    CHECK(std::fabs(special::chisq_cdf(0.5, 1) - 0.52049987781304653768) < 1e-10);
    CHECK(std::fabs(special::chisq_cdf(1.0, 2) - 0.3934693402873665764) < 1e-10);
    CHECK(std::fabs(special::chisq_cdf(10.0 / 3.0, 1) - 0.93211084513817098246) < 1e-10);
    CHECK(std::fabs(special::chisq_cdf(10.0, 5) - 0.92476475385348782128) < 1e-10);
    CHECK(std::fabs(special::chisq_sf(10.0 / 3.0, 1) - 0.067889154861829024) < 1e-10);
    // CDF limit
    CHECK(special::chisq_cdf(1e9, 4) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("t_cdf matches reference points") {
    CHECK(std::fabs(special::t_cdf(1.0, 1) - 0.75) < 1e-10);
    CHECK(std::fabs(special::t_cdf(-1.5491933384829668, 2.9411764705882355) -
                    0.11044042024704795398) < 1e-10);
    CHECK(std::fabs(special::t_cdf(2.0, 10) - 0.96330598261462981719) < 1e-10);
    CHECK(std::fabs(special::t_cdf(-2.5, 3.7) - 0.035911011455913386391) < 1e-10);
    // Large-df limit approaches the normal CDF.
    CHECK(std::fabs(special::t_cdf(1.0, 1e6) - special::normal_cdf(1.0)) < 1e-6);
}

TEST_CASE("f_cdf matches reference points") {
    CHECK(std::fabs(special::f_cdf(1.0, 3, 10) - 0.56766279697830293492) < 1e-10);
    CHECK(std::fabs(special::f_cdf(2.5, 7, 676) - 0.98467519399763534007) < 1e-10);
    CHECK(std::fabs(special::f_cdf(0.5, 1, 1) - 0.39182655203060727017) < 1e-10);
    CHECK(special::f_sf(137.0833, 7, 676) < 2.2e-16);
}

TEST_CASE("normal_quantile inverts normal_cdf") {
    for (double p : {1e-10, 1e-4, 0.025, 0.3, 0.5, 0.7, 0.975, 0.9999, 1.0 - 1e-10}) {
        const double z = special::normal_quantile(p);
        CHECK(std::fabs(special::normal_cdf(z) - p) < 1e-12);
    }
    CHECK_THROWS_AS(special::normal_quantile(0.0), DataError);
}

TEST_CASE("t_quantile inverts t_cdf") {
    CHECK(std::fabs(special::t_quantile(0.975, 678.48) - 1.9634665738863804) < 1e-9);
    for (double df : {1.0, 2.941, 10.0, 120.0}) {
        for (double p : {0.05, 0.5, 0.9, 0.975}) {
            const double q = special::t_quantile(p, df);
            CHECK(std::fabs(special::t_cdf(q, df) - p) < 1e-10);
        }
    }
}

TEST_CASE("CDFs are monotone and bounded on random grids") {
    std::mt19937_64 gen(991);
    std::uniform_real_distribution<double> step_size(1e-3, 8.0);
    int cases = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const double df = 0.5 + (trial % 17) * 1.7;
        double prev_n = -1.0, prev_c = -1.0, prev_t = -1.0, prev_f = -1.0;
        double x = -40.0;
        for (int esteps = 0; esteps < 25; ++esteps) {
            x += step_size(gen);
            const double pn = special::normal_cdf(x);
            const double pc = special::chisq_cdf(x + 40.0, df);
            const double pt = special::t_cdf(x, df);
            const double pf = special::f_cdf(x + 40.0, df, df + 1.0);
            for (const double p : {pn, pc, pt, pf}) {
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
            }
            CHECK(pn >= prev_n - 1e-12);
            CHECK(pt >= prev_t - 1e-12);
            CHECK(pc >= prev_c - 1e-12);
            CHECK(pf >= prev_f - 1e-12);
            prev_n = pn;
            prev_c = pc;
            prev_t = pt;
            prev_f = pf;
            ++cases;
        }
    }
    CHECK(cases >= 100);
}

TEST_CASE("digamma and trigamma match known values") {
    constexpr double euler = 0.57721566490153286061;
    CHECK(std::fabs(special::digamma(1.0) + euler) < 1e-12);
    CHECK(std::fabs(special::digamma(0.5) + 2.0 * std::log(2.0) + euler) < 1e-12);
    // psi(2) = 1 - euler
    CHECK(std::fabs(special::digamma(2.0) - (1.0 - euler)) < 1e-12);
    // psi'(1) = pi^2/6
    CHECK(std::fabs(special::trigamma(1.0) - 1.6449340668482264365) < 1e-12);
    // recurrence psi'(x) = psi'(x+1) + 1/x^2
    for (double x : {0.3, 1.7, 4.2, 11.0}) {
        CHECK(std::fabs(special::trigamma(x) - special::trigamma(x + 1.0) - 1.0 / (x * x)) <
              1e-11);
    }
}
