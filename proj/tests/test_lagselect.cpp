#include "doctest.h"

#include <cmath>

#include "vecmkit/lagselect.hpp"
#include "vecmkit/simulate.hpp"
#include "vecmkit/stats.hpp"

using namespace vecmkit;

namespace {

Dataset white_panel(int K, int T, std::uint64_t seed) {
    sim::ProcessSpec spec;
    spec.kind = sim::ProcessKind::white_noise;
    spec.K = K;
    spec.T = T;
    spec.seed = seed;
    return sim::simulate(spec);
}

} // namespace

TEST_CASE("fit_var on white noise finds no dynamics") {
    const auto d = white_panel(1, 5000, 12);
    const auto fit = fit_var(d, 1);
    const double est = fit.coefficients[0](0, 0);
    const double se = fit.coefficient_standard_errors(1, 0);
    CHECK(std::abs(est) < 3.0 * se);
    CHECK(fit.sample_T == 4999);
}

TEST_CASE("fit_var recovers a diagonal VAR(1)") {
    sim::ProcessSpec spec;
    spec.kind = sim::ProcessKind::var;
    spec.K = 2;
    spec.T = 5000;
    spec.seed = 77;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
    A.diagonal() << 0.5, 0.5;
    spec.var_coefficients = {A};
    const auto fit = fit_var(sim::simulate(spec), 1);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double se = fit.coefficient_standard_errors(1 + j, i);
            CHECK(std::abs(fit.coefficients[0](i, j) - A(i, j)) < 3.0 * se);
        }
    }
}

TEST_CASE("a five-variable VAR(1) has 25 slope parameters") {
    const auto d = white_panel(5, 60, 4);
    const auto fit = fit_var(d, 1);
    REQUIRE(fit.coefficients.size() == 1);
    CHECK(fit.coefficients[0].rows() * fit.coefficients[0].cols() == 25);
    CHECK(fit.intercept.size() == 5);
}

TEST_CASE("fit_var validates the sample size") {
    const auto d = white_panel(2, 12, 4);
    CHECK_THROWS_WITH_AS(fit_var(d, 5), doctest::Contains("insufficient"), Error);
}

TEST_CASE("lag table obeys the likelihood identities") {
    const auto d = white_panel(3, 300, 6);
    const auto table = lag_order_table(d, 4);
    REQUIRE(table.rows.size() == 4);

    double prev_ll = -1e300;
    for (const auto& row : table.rows) {
        CHECK(row.log_likelihood >= prev_ll); // LL non-decreasing in p
        CHECK(row.lr_statistic >= 0.0);
        CHECK(row.df == 9);
        CHECK(row.p_value == doctest::Approx(stats::chi2_sf(row.lr_statistic, 9)));
        prev_ll = row.log_likelihood;
    }
    // consecutive LR statistics chain through the LL column
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        CHECK(table.rows[i].lr_statistic ==
              doctest::Approx(2.0 * (table.rows[i].log_likelihood -
                                     table.rows[i - 1].log_likelihood))
                  .epsilon(1e-10));
    }
}

TEST_CASE("white noise selects lag 1") {
    // AIC and FPE keep a nonvanishing overselection probability, so the
    // bound applies to the consistent criteria and the majority decision.
    int majority_one = 0, hqic_one = 0, sbic_one = 0;
    for (int seed = 0; seed < 100; ++seed) {
        const auto table = lag_order_table(white_panel(2, 400, 5000 + seed), 4);
        if (select_lag(table) == 1) ++majority_one;
        if (table.starred_minima.at(LagCriterion::hqic) == 1) ++hqic_one;
        if (table.starred_minima.at(LagCriterion::sbic) == 1) ++sbic_one;
    }
    CHECK(majority_one >= 90);
    CHECK(hqic_one >= 90);
    CHECK(sbic_one >= 90);
}

TEST_CASE("AIC stars the true lag of a VAR(3) panel") {
    Eigen::MatrixXd A1 = Eigen::MatrixXd::Zero(2, 2);
    A1.diagonal() << 0.4, 0.3;
    Eigen::MatrixXd A2 = Eigen::MatrixXd::Zero(2, 2);
    A2.diagonal() << -0.2, 0.2;
    Eigen::MatrixXd A3 = Eigen::MatrixXd::Zero(2, 2);
    A3.diagonal() << 0.3, -0.25;
    A3(0, 1) = 0.15;

    int aic_three = 0;
    for (int seed = 0; seed < 100; ++seed) {
        sim::ProcessSpec spec;
        spec.kind = sim::ProcessKind::var;
        spec.K = 2;
        spec.T = 2000;
        spec.seed = static_cast<std::uint64_t>(seed);
        spec.var_coefficients = {A1, A2, A3};
        const auto table = lag_order_table(sim::simulate(spec), 4);
        if (table.starred_minima.at(LagCriterion::aic) == 3) ++aic_three;
    }
    CHECK(aic_three >= 90);
}

TEST_CASE("SBIC never selects a longer lag than AIC") {
    for (int seed = 0; seed < 20; ++seed) {
        const auto kind = seed % 2 == 0 ? sim::ProcessKind::white_noise : sim::ProcessKind::random_walk;
        sim::ProcessSpec spec;
        spec.kind = kind;
        spec.K = 2;
        spec.T = 250;
        spec.seed = static_cast<std::uint64_t>(900 + seed);
        const auto table = lag_order_table(sim::simulate(spec), 4);
        CHECK(table.starred_minima.at(LagCriterion::sbic) <=
              table.starred_minima.at(LagCriterion::aic));
    }
}

TEST_CASE("select_lag applies the majority rule with a small-lag tie break") {
    LagTable t;
    t.K = 5;
    for (int lag = 1; lag <= 4; ++lag) {
        LagRow r;
        r.lag = lag;
        t.rows.push_back(r);
    }

    // three criteria star lag 3, one stars lag 4
    t.starred_minima = {{LagCriterion::fpe, 4},
                        {LagCriterion::aic, 3},
                        {LagCriterion::hqic, 3},
                        {LagCriterion::sbic, 3}};
    CHECK(select_lag(t) == 3);

    // unanimous
    t.starred_minima = {{LagCriterion::fpe, 1},
                        {LagCriterion::aic, 1},
                        {LagCriterion::hqic, 1},
                        {LagCriterion::sbic, 1}};
    CHECK(select_lag(t) == 1);

    // two-way tie between 2 and 3 goes to the smaller lag
    t.starred_minima = {{LagCriterion::fpe, 2},
                        {LagCriterion::aic, 2},
                        {LagCriterion::hqic, 3},
                        {LagCriterion::sbic, 3}};
    CHECK(select_lag(t) == 2);

    // single-criterion rules read the table directly
    t.starred_minima = {{LagCriterion::fpe, 4},
                        {LagCriterion::aic, 3},
                        {LagCriterion::hqic, 2},
                        {LagCriterion::sbic, 1}};
    CHECK(select_lag(t, LagRule::aic) == 3);
    CHECK(select_lag(t, LagRule::sbic) == 1);
    CHECK(select_lag(t, LagRule::fpe) == 4);

    CHECK_THROWS_AS(select_lag(LagTable{}), Error);
}

TEST_CASE("lag_order_table reports the largest feasible depth on short panels") {
    const auto d = white_panel(5, 28, 1);
    CHECK(max_feasible_lag(28, 5) == 3);
    CHECK_THROWS_WITH_AS(lag_order_table(d, 4), doctest::Contains("largest feasible is 3"), Error);
    CHECK_NOTHROW(lag_order_table(d, 3));
}
