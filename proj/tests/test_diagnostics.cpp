#include "doctest.h"

#include <cmath>

#include "vecmkit/diagnostics.hpp"
#include "vecmkit/report.hpp"
#include "vecmkit/simulate.hpp"
#include "vecmkit/stats.hpp"

using namespace vecmkit;

namespace {

// Minimal model wrapper around a residual matrix: intercept-only regressors,
// exactly what the LM and normality checks need.
VecmModel residual_model(const Eigen::MatrixXd& resid) {
    VecmModel m;
    m.K = static_cast<int>(resid.cols());
    m.p = 1;
    m.r = 0;
    m.sample_T = static_cast<int>(resid.rows());
    for (int i = 0; i < m.K; ++i) m.variable_names.push_back("v" + std::to_string(i + 1));
    m.regressors = Eigen::MatrixXd::Ones(resid.rows(), 1);
    // center against the intercept so the stored residuals are a true fit
    Eigen::MatrixXd centered = resid;
    centered.rowwise() -= resid.colwise().mean();
    m.residuals = centered;
    m.residual_covariance = centered.transpose() * centered / static_cast<double>(resid.rows());
    m.alpha = Eigen::MatrixXd(m.K, 0);
    m.beta = Eigen::MatrixXd(m.K, 0);
    return m;
}

Eigen::MatrixXd gaussian_matrix(int T, int K, std::uint64_t seed) {
    sim::Rng rng(seed);
    Eigen::MatrixXd m(T, K);
    for (int t = 0; t < T; ++t) {
        for (int j = 0; j < K; ++j) m(t, j) = rng.gaussian();
    }
    return m;
}

Dataset cointegrated_panel(int K, int T, std::uint64_t seed) {
    sim::ProcessSpec spec;
    spec.kind = sim::ProcessKind::vecm;
    spec.K = K;
    spec.T = T;
    spec.seed = seed;
    spec.alpha = Eigen::MatrixXd::Zero(K, 1);
    spec.beta = Eigen::MatrixXd::Zero(K, 1);
    spec.alpha(0, 0) = -0.5;
    spec.alpha(1, 0) = 0.2;
    spec.beta(0, 0) = 1.0;
    spec.beta(1, 0) = -1.0;
    return sim::simulate(spec);
}

} // namespace

TEST_CASE("lm_autocorr holds its size on independent residuals") {
    int rejections = 0;
    const int seeds = 500;
    for (int seed = 0; seed < seeds; ++seed) {
        const auto m = residual_model(gaussian_matrix(200, 5, 100 + seed));
        const auto rows = lm_autocorr(m, 1);
        if (rows[0].p_value < 0.05) ++rejections;
    }
    const double rate = rejections / static_cast<double>(seeds);
    CHECK(rate >= 0.02);
    CHECK(rate <= 0.09);
}

TEST_CASE("lm_autocorr detects injected lag-1 autocorrelation") {
    int rejections = 0;
    for (int seed = 0; seed < 100; ++seed) {
        sim::Rng rng(9000 + seed);
        const int T = 300, K = 2;
        Eigen::MatrixXd e(T, K);
        Eigen::RowVectorXd prev = Eigen::RowVectorXd::Zero(K);
        for (int t = 0; t < T; ++t) {
            for (int j = 0; j < K; ++j) e(t, j) = 0.8 * prev(j) + rng.gaussian();
            prev = e.row(t);
        }
        const auto rows = lm_autocorr(residual_model(e), 1);
        if (rows[0].p_value < 0.05) ++rejections;
    }
    CHECK(rejections >= 95);
}

TEST_CASE("lm_autocorr degrees of freedom are always K squared") {
    const auto m = residual_model(gaussian_matrix(120, 5, 3));
    for (const auto& row : lm_autocorr(m, 3)) {
        CHECK(row.df == 25);
        CHECK(row.chi2 >= 0.0);
        CHECK(row.p_value == doctest::Approx(stats::chi2_sf(row.chi2, 25)));
    }
    CHECK_THROWS_AS(lm_autocorr(m, 0), Error);
}

TEST_CASE("lm_autocorr is invariant under variable relabeling") {
    const auto d = cointegrated_panel(3, 250, 21);
    const auto base = lm_autocorr(fit_vecm(d, 2, 1), 2);

    std::vector<TimeSeries> reordered{d.series(2), d.series(0), d.series(1)};
    const auto permuted = lm_autocorr(fit_vecm(Dataset(reordered), 2, 1), 2);

    REQUIRE(base.size() == permuted.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(permuted[i].chi2 == doctest::Approx(base[i].chi2).epsilon(1e-8));
    }
}

TEST_CASE("normality_test matches the Jarque-Bera building blocks") {
    // symmetric residuals: the skewness term vanishes
    const int T = 60;
    Eigen::MatrixXd sym(T, 1);
    for (int t = 0; t < T / 2; ++t) {
        const double v = 0.3 + 0.05 * t;
        sym(2 * t, 0) = v;
        sym(2 * t + 1, 0) = -v;
    }
    const auto m = residual_model(sym);
    const auto rows = normality_test(m);
    REQUIRE(rows.size() == 2);

    // recompute kurtosis of the standardized column
    Eigen::VectorXd w = m.residuals.col(0);
    w /= std::sqrt(w.squaredNorm() / T);
    const double skew = w.array().cube().mean();
    const double kurt = w.array().pow(4).mean();
    CHECK(skew == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rows[0].chi2 ==
          doctest::Approx(T * (kurt - 3.0) * (kurt - 3.0) / 24.0).epsilon(1e-10));
}

TEST_CASE("normality_test accepts standard-normal quantiles") {
    const int T = 1000;
    Eigen::MatrixXd resid(T, 1);
    for (int t = 0; t < T; ++t) {
        resid(t, 0) = stats::normal_quantile((t + 0.5) / T);
    }
    const auto rows = normality_test(residual_model(resid));
    CHECK(rows[0].chi2 < 0.5);
    CHECK(rows[0].p_value > 0.7);
}

TEST_CASE("normality_test df layout and ALL row aggregation") {
    const auto m = residual_model(gaussian_matrix(150, 5, 8));
    const auto rows = normality_test(m);
    REQUIRE(rows.size() == 6);
    double total = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(rows[i].df == 2);
        total += rows[i].chi2;
    }
    CHECK(rows[5].equation == "ALL");
    CHECK(rows[5].df == 10);
    CHECK(rows[5].chi2 == total); // exact sum, not approximate

    Eigen::MatrixXd degenerate = gaussian_matrix(50, 2, 5);
    degenerate.col(1).setConstant(2.0);
    CHECK_THROWS_WITH_AS(normality_test(residual_model(degenerate)),
                         doctest::Contains("degenerate"), Error);
}

TEST_CASE("stability_check flags the rank restriction's unit roots") {
    const auto d = restrict_sample(sim::make_surrogate_panel(), std::nullopt, 2017);

    // rank 1 leaves K - r = 4 imposed unit moduli, the published footer count
    const auto rank1 = stability_check(fit_vecm(d, 3, 1));
    CHECK(rank1.eigenvalues.size() == 15);
    CHECK(rank1.imposed_unit_moduli == 4);

    // rank 4 leaves exactly one
    const auto rank4 = stability_check(fit_vecm(d, 3, 4));
    CHECK(rank4.imposed_unit_moduli == 1);

    // moduli come sorted descending
    for (std::size_t i = 1; i < rank1.moduli.size(); ++i) {
        CHECK(rank1.moduli[i] <= rank1.moduli[i - 1] + 1e-12);
    }
}

TEST_CASE("a stationary system embedded at full rank is stable") {
    sim::ProcessSpec spec;
    spec.kind = sim::ProcessKind::var;
    spec.K = 2;
    spec.T = 400;
    spec.seed = 31;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
    A.diagonal() << 0.5, 0.3;
    spec.var_coefficients = {A};
    const auto m = fit_vecm(sim::simulate(spec), 1, 2);
    const auto rep = stability_check(m);
    CHECK(rep.imposed_unit_moduli == 0);
    CHECK(rep.stable);
}

TEST_CASE("an explosive non-imposed modulus marks the model unstable") {
    VecmModel m;
    m.K = 1;
    m.p = 1;
    m.r = 1;
    m.alpha = Eigen::MatrixXd::Constant(1, 1, 0.66697);
    m.beta = Eigen::MatrixXd::Identity(1, 1);
    const auto rep = stability_check(m);
    REQUIRE(rep.moduli.size() == 1);
    CHECK(rep.moduli[0] == doctest::Approx(1.66697));
    CHECK(rep.imposed_unit_moduli == 0);
    CHECK_FALSE(rep.stable);

    const std::string text = render_stability_table(rep);
    CHECK(text.find("imposes 0 unit moduli") != std::string::npos);
    CHECK(text.find("Stable: no") != std::string::npos);
}
