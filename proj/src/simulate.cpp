#include "vecmkit/simulate.hpp"

#include <cmath>

#include "vecmkit/stats.hpp"

namespace vecmkit::sim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

double Rng::uniform() {
    // Top 53 bits, centered: never exactly 0 or 1.
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::gaussian() { return stats::normal_quantile(uniform()); }

ProcessKind parse_process_kind(const std::string& text) {
    if (text == "white_noise") return ProcessKind::white_noise;
    if (text == "random_walk") return ProcessKind::random_walk;
    if (text == "var") return ProcessKind::var;
    if (text == "vecm") return ProcessKind::vecm;
    throw InputError("unknown process kind '" + text + "'");
}

std::string to_string(ProcessKind k) {
    switch (k) {
        case ProcessKind::white_noise: return "white_noise";
        case ProcessKind::random_walk: return "random_walk";
        case ProcessKind::var: return "var";
        case ProcessKind::vecm: return "vecm";
    }
    return "?";
}

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw Error("simulate: " + msg);
}

int matrix_rank(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return static_cast<int>(svd.setThreshold(1e-10).rank());
}

} // namespace

Dataset simulate(const ProcessSpec& spec) {
    const int K = spec.K;
    const int T = spec.T;
    require(K >= 1, "K must be at least 1");
    require(T >= 10, "T must be at least 10");

    Eigen::VectorXd drift = spec.drift;
    if (drift.size() == 0) drift = Eigen::VectorXd::Zero(K);
    require(drift.size() == K, "drift dimension mismatch");

    Eigen::MatrixXd sigma = spec.innovation_covariance;
    if (sigma.size() == 0) sigma = Eigen::MatrixXd::Identity(K, K);
    require(sigma.rows() == K && sigma.cols() == K,
            "innovation covariance dimension mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    require(llt.info() == Eigen::Success,
            "innovation covariance must be positive definite");
    const Eigen::MatrixXd chol = llt.matrixL();

    int p = 0; // autoregressive depth of the recursion
    switch (spec.kind) {
        case ProcessKind::white_noise:
        case ProcessKind::random_walk:
            break;
        case ProcessKind::var:
            require(!spec.var_coefficients.empty(), "var spec needs coefficient matrices");
            for (const auto& a : spec.var_coefficients) {
                require(a.rows() == K && a.cols() == K, "var coefficient dimension mismatch");
            }
            p = static_cast<int>(spec.var_coefficients.size());
            break;
        case ProcessKind::vecm: {
            require(spec.alpha.rows() == K && spec.beta.rows() == K,
                    "vecm alpha/beta must have K rows");
            require(spec.alpha.cols() == spec.beta.cols(),
                    "vecm alpha and beta must agree on rank");
            const int r = static_cast<int>(spec.alpha.cols());
            require(r >= 1 && r <= K, "vecm rank out of range");
            require(matrix_rank(spec.alpha * spec.beta.transpose()) == r,
                    "alpha * beta' does not have the declared rank");
            for (const auto& g : spec.gamma) {
                require(g.rows() == K && g.cols() == K, "vecm gamma dimension mismatch");
            }
            p = static_cast<int>(spec.gamma.size()) + 1;
            break;
        }
    }

    const bool stationary =
        spec.kind == ProcessKind::white_noise || spec.kind == ProcessKind::var;
    const int burn = stationary ? 100 : 0;
    const int total = T + burn + p;

    Rng rng(spec.seed);
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(total, K);
    Eigen::VectorXd z(K);

    for (int t = p; t < total; ++t) {
        for (int i = 0; i < K; ++i) z(i) = rng.gaussian();
        const Eigen::VectorXd eps = chol * z;
        switch (spec.kind) {
            case ProcessKind::white_noise:
                y.row(t) = (drift + eps).transpose();
                break;
            case ProcessKind::random_walk:
                if (t > 0) y.row(t) = y.row(t - 1);
                y.row(t) += (drift + eps).transpose();
                break;
            case ProcessKind::var: {
                Eigen::VectorXd v = drift + eps;
                for (int j = 1; j <= p; ++j) {
                    v += spec.var_coefficients[static_cast<std::size_t>(j - 1)] *
                         y.row(t - j).transpose();
                }
                y.row(t) = v.transpose();
                break;
            }
            case ProcessKind::vecm: {
                Eigen::VectorXd dy =
                    drift + eps +
                    spec.alpha * (spec.beta.transpose() * y.row(t - 1).transpose());
                for (std::size_t j = 0; j < spec.gamma.size(); ++j) {
                    const int lag = static_cast<int>(j) + 1;
                    dy += spec.gamma[j] *
                          (y.row(t - lag) - y.row(t - lag - 1)).transpose();
                }
                y.row(t) = y.row(t - 1) + dy.transpose();
                break;
            }
        }
    }

    std::vector<TimeSeries> series;
    series.reserve(static_cast<std::size_t>(K));
    std::vector<int> periods(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) periods[static_cast<std::size_t>(t)] = spec.first_period + t;
    for (int i = 0; i < K; ++i) {
        TimeSeries s;
        s.name = i < static_cast<int>(spec.names.size())
                     ? spec.names[static_cast<std::size_t>(i)]
                     : "x" + std::to_string(i + 1);
        s.periods = periods;
        s.values.resize(static_cast<std::size_t>(T));
        for (int t = 0; t < T; ++t) {
            s.values[static_cast<std::size_t>(t)] = y(total - T + t, i);
        }
        series.push_back(std::move(s));
    }
    return Dataset(std::move(series));
}

Dataset make_surrogate_panel(std::uint64_t seed) {
    // Rank-1 VECM in the five paper variables, three lags in levels, mild
    // drift, correlated innovations. Magnitudes loosely follow the published
    // coefficient scale; the point is a panel the whole pipeline can digest.
    ProcessSpec spec;
    spec.kind = ProcessKind::vecm;
    spec.K = 5;
    spec.T = 28;
    spec.seed = seed;
    spec.first_period = 1993;
    spec.names = {"ROA", "INF", "MSS", "EXCH", "UPY"};

    spec.alpha = Eigen::MatrixXd(5, 1);
    spec.alpha << -0.30, 0.05, 0.03, -0.08, 0.04;
    spec.beta = Eigen::MatrixXd(5, 1);
    spec.beta << 1.0, -0.40, 0.25, -0.60, 0.35;

    Eigen::MatrixXd g1 = Eigen::MatrixXd::Zero(5, 5);
    g1.diagonal() << 0.25, 0.30, 0.20, 0.15, 0.25;
    g1(0, 1) = -0.10; // inflation shocks feed returns
    g1(3, 1) = 0.08;  // and the exchange rate
    g1(2, 4) = 0.06;
    Eigen::MatrixXd g2 = Eigen::MatrixXd::Zero(5, 5);
    g2.diagonal() << -0.10, 0.05, 0.05, 0.05, -0.05;
    spec.gamma = {g1, g2};

    spec.drift = Eigen::VectorXd(5);
    spec.drift << 0.10, 0.15, 0.20, 0.12, 0.05;

    Eigen::MatrixXd sigma(5, 5);
    sigma << 1.00, 0.30, 0.20, 0.10, 0.05,
             0.30, 1.00, 0.25, 0.15, 0.05,
             0.20, 0.25, 1.00, 0.10, 0.10,
             0.10, 0.15, 0.10, 1.00, 0.05,
             0.05, 0.05, 0.10, 0.05, 1.00;
    spec.innovation_covariance = sigma;

    return simulate(spec);
}

} // namespace vecmkit::sim
