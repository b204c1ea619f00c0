#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vecmkit/lagselect.hpp"
#include "vecmkit/simulate.hpp"
#include "vecmkit/unitroot.hpp"

using namespace vecmkit;

namespace {

std::string file_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("simulate is deterministic given the seed") {
    sim::ProcessSpec spec;
    spec.kind = sim::ProcessKind::white_noise;
    spec.K = 3;
    spec.T = 100;
    spec.seed = 42;
    const Dataset a = sim::simulate(spec);
    const Dataset b = sim::simulate(spec);
    REQUIRE(a.T() == 100);
    for (int j = 0; j < a.K(); ++j) {
        CHECK(a.series(j).values == b.series(j).values);
    }
    spec.seed = 43;
    const Dataset c = sim::simulate(spec);
    CHECK(a.series(0).values != c.series(0).values);
}

TEST_CASE("white noise sample means concentrate") {
    int ok = 0;
    for (int seed = 0; seed < 100; ++seed) {
        sim::ProcessSpec spec;
        spec.kind = sim::ProcessKind::white_noise;
        spec.T = 400;
        spec.seed = static_cast<std::uint64_t>(seed);
        const Dataset d = sim::simulate(spec);
        double mean = 0.0;
        for (double v : d.series(0).values) mean += v;
        mean /= d.T();
        if (std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(d.T()))) ++ok;
    }
    CHECK(ok >= 99);
}

TEST_CASE("simulated VAR refit recovers its coefficients") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
    A(0, 0) = 0.5;
    A(1, 1) = 0.5;
    int ok = 0;
    for (int seed = 0; seed < 100; ++seed) {
        sim::ProcessSpec spec;
        spec.kind = sim::ProcessKind::var;
        spec.K = 2;
        spec.T = 5000;
        spec.seed = static_cast<std::uint64_t>(seed);
        spec.var_coefficients = {A};
        const Dataset d = sim::simulate(spec);
        const auto fit = fit_var(d, 1);
        // rows of coefficient_standard_errors: intercept, then lag-1 block
        bool within = true;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double est = fit.coefficients[0](i, j);
                const double se = fit.coefficient_standard_errors(1 + j, i);
                if (std::abs(est - A(i, j)) > 3.0 * se) within = false;
            }
        }
        if (within) ++ok;
    }
    CHECK(ok >= 95);
}

TEST_CASE("vecm spec produces a stationary cointegrating spread") {
    int reject = 0;
    for (int seed = 0; seed < 100; ++seed) {
        sim::ProcessSpec spec;
        spec.kind = sim::ProcessKind::vecm;
        spec.K = 2;
        spec.T = 400;
        spec.seed = static_cast<std::uint64_t>(seed);
        spec.alpha = Eigen::MatrixXd(2, 1);
        spec.alpha << -0.4, 0.2;
        spec.beta = Eigen::MatrixXd(2, 1);
        spec.beta << 1.0, -1.0;
        const Dataset d = sim::simulate(spec);
        TimeSeries spread;
        spread.name = "spread";
        spread.periods = d.periods();
        for (int t = 0; t < d.T(); ++t) {
            spread.values.push_back(d.series(0).values[static_cast<std::size_t>(t)] -
                                    d.series(1).values[static_cast<std::size_t>(t)]);
        }
        const auto pp = pp_test(spread);
        if (pp.decision == UnitRootDecision::reject_unit_root) ++reject;
    }
    CHECK(reject >= 90);
}

TEST_CASE("simulate validates its spec") {
    sim::ProcessSpec spec;
    spec.kind = sim::ProcessKind::vecm;
    spec.K = 3;
    spec.T = 50;
    spec.alpha = Eigen::MatrixXd(3, 2);
    spec.alpha << 1, 2, 2, 4, 1, 2; // dependent columns: rank 1, declared 2
    spec.beta = Eigen::MatrixXd(3, 2);
    spec.beta << 1, 0, 0, 1, 0, 0;
    CHECK_THROWS_WITH_AS(sim::simulate(spec), doctest::Contains("declared rank"), Error);

    sim::ProcessSpec bad_cov;
    bad_cov.kind = sim::ProcessKind::white_noise;
    bad_cov.K = 2;
    bad_cov.T = 50;
    bad_cov.innovation_covariance = Eigen::MatrixXd::Zero(2, 2);
    CHECK_THROWS_WITH_AS(sim::simulate(bad_cov), doctest::Contains("positive definite"), Error);

    sim::ProcessSpec bad_dims;
    bad_dims.kind = sim::ProcessKind::var;
    bad_dims.K = 2;
    bad_dims.T = 50;
    bad_dims.var_coefficients = {Eigen::MatrixXd::Zero(3, 3)};
    CHECK_THROWS_WITH_AS(sim::simulate(bad_dims), doctest::Contains("dimension"), Error);
}

TEST_CASE("surrogate panel has the documented shape and is reproducible") {
    const Dataset d = sim::make_surrogate_panel();
    CHECK(d.K() == 5);
    CHECK(d.T() == 28);
    CHECK(d.periods().front() == 1993);
    CHECK(d.periods().back() == 2020);
    CHECK(d.names() == std::vector<std::string>{"ROA", "INF", "MSS", "EXCH", "UPY"});

    // same seed, same bytes on disk
    const auto p1 = std::filesystem::temp_directory_path() / "sur_a.csv";
    const auto p2 = std::filesystem::temp_directory_path() / "sur_b.csv";
    write_csv(sim::make_surrogate_panel(), p1.string());
    write_csv(sim::make_surrogate_panel(), p2.string());
    CHECK(file_bytes(p1) == file_bytes(p2));

    // and identical to the bundled fixture
    const auto bundled = std::string(VECMKIT_SOURCE_DIR) + "/data/nigeria_surrogate.csv";
    CHECK(file_bytes(p1) == file_bytes(bundled));
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}
