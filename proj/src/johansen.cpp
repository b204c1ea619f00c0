#include "vecmkit/johansen.hpp"

#include <cmath>

#include "vecmkit/stats.hpp"

namespace vecmkit {

TrendCase parse_trend(const std::string& text) {
    if (text == "none") return TrendCase::none;
    if (text == "constant") return TrendCase::constant;
    if (text == "trend") return TrendCase::trend;
    throw InputError("unknown trend case '" + text + "' (expected none|constant|trend)");
}

std::string to_string(TrendCase t) {
    switch (t) {
        case TrendCase::none: return "none";
        case TrendCase::constant: return "constant";
        case TrendCase::trend: return "trend";
    }
    return "?";
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int deterministic_columns(TrendCase t) {
    switch (t) {
        case TrendCase::none: return 0;
        case TrendCase::constant: return 1;
        case TrendCase::trend: return 2;
    }
    return 0;
}

double logdet_spd(const Eigen::MatrixXd& m, const char* what) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw Error(std::string(what) + " is not positive definite (collinear panel?)");
    }
    const Eigen::MatrixXd L = llt.matrixL();
    return 2.0 * L.diagonal().array().log().sum();
}

// 5% and 1% asymptotic trace critical values, unrestricted constant,
// indexed by K - r = 1..5.
constexpr double kTraceCv5[5] = {3.76, 15.41, 29.68, 47.21, 68.52};
constexpr double kTraceCv1[5] = {6.65, 20.04, 35.65, 54.46, 76.07};

} // namespace

double trace_critical_value(int k_minus_r, double level) {
    if (k_minus_r < 1 || k_minus_r > 5) {
        throw Error("trace_critical_value: embedded table covers K - r = 1..5 only");
    }
    if (level == 0.05) return kTraceCv5[k_minus_r - 1];
    if (level == 0.01) return kTraceCv1[k_minus_r - 1];
    throw Error("trace_critical_value: embedded table has 5% and 1% levels only");
}

RrrResult rrr_decompose(const Dataset& d, int p, TrendCase trend) {
    const int T = d.T();
    const int K = d.K();
    if (p < 1) throw Error("rrr_decompose: lag order must be at least 1");
    const int n = T - p;
    if (n < K * p + K + 1) {
        throw Error("rrr_decompose: insufficient observations (" + std::to_string(n) +
                    " usable of " + std::to_string(T) + ") for K = " + std::to_string(K) +
                    ", p = " + std::to_string(p));
    }

    const Eigen::MatrixXd y = d.matrix();
    Eigen::MatrixXd Z0(n, K), Z1(n, K);
    const int ndet = deterministic_columns(trend);
    const int nz2 = K * (p - 1) + ndet;
    Eigen::MatrixXd Z2(n, nz2);
    for (int i = 0; i < n; ++i) {
        const int t = p + i;
        Z0.row(i) = y.row(t) - y.row(t - 1);
        Z1.row(i) = y.row(t - 1);
        for (int j = 1; j <= p - 1; ++j) {
            Z2.block(i, (j - 1) * K, 1, K) = y.row(t - j) - y.row(t - j - 1);
        }
        if (ndet >= 1) Z2(i, K * (p - 1)) = 1.0;
        if (ndet == 2) Z2(i, K * (p - 1) + 1) = i + 1;
    }

    Eigen::MatrixXd R0, R1;
    if (nz2 > 0) {
        const auto f0 = stats::ols(Z0, Z2);
        const auto f1 = stats::ols(Z1, Z2);
        R0 = f0.residuals;
        R1 = f1.residuals;
    } else {
        R0 = Z0;
        R1 = Z1;
    }

    RrrResult res;
    res.sample_T = n;
    res.trend = trend;
    res.S00 = R0.transpose() * R0 / n;
    res.S01 = R0.transpose() * R1 / n;
    res.S11 = R1.transpose() * R1 / n;

    logdet_spd(res.S00, "S00"); // reject collinear panels early
    const Eigen::MatrixXd S00_inv_S01 = res.S00.ldlt().solve(res.S01);
    const Eigen::MatrixXd A = res.S01.transpose() * S00_inv_S01;

    const auto sol = stats::gen_eig_sym(A, res.S11);
    res.eigenvalues = sol.eigenvalues.cwiseMax(0.0).cwiseMin(1.0 - 1e-14);
    res.eigenvectors = sol.eigenvectors;
    return res;
}

std::vector<double> trace_statistics(const Eigen::VectorXd& eigenvalues, int T) {
    const int K = static_cast<int>(eigenvalues.size());
    for (int i = 0; i < K; ++i) {
        if (eigenvalues(i) < 0.0 || eigenvalues(i) >= 1.0) {
            throw Error("trace_statistics: eigenvalues must lie in [0, 1)");
        }
    }
    std::vector<double> out(static_cast<std::size_t>(K));
    double acc = 0.0;
    for (int i = K - 1; i >= 0; --i) {
        acc += -T * std::log1p(-eigenvalues(i));
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

int select_rank(const std::vector<double>& trace, const std::vector<double>& critical_values) {
    if (trace.size() != critical_values.size()) {
        throw Error("select_rank: trace and critical value lists differ in length");
    }
    for (std::size_t r = 0; r < trace.size(); ++r) {
        if (trace[r] < critical_values[r]) return static_cast<int>(r);
    }
    return static_cast<int>(trace.size());
}

RankTestResult rank_table(const Dataset& d, int p, TrendCase trend, double cv_level) {
    if (trend != TrendCase::constant) {
        throw Error("rank_table: critical values are embedded for the constant case only");
    }
    const int K = d.K();
    if (K > 5) {
        throw Error("rank_table: embedded critical values cover up to 5 variables");
    }

    const auto rrr = rrr_decompose(d, p, trend);
    const int n = rrr.sample_T;
    const auto traces = trace_statistics(rrr.eigenvalues, n);

    std::vector<double> cvs;
    cvs.reserve(static_cast<std::size_t>(K));
    for (int r = 0; r < K; ++r) cvs.push_back(trace_critical_value(K - r, cv_level));

    const double c = -0.5 * n * K * (std::log(kTwoPi) + 1.0);
    const double logdet_s00 = [&] {
        Eigen::LLT<Eigen::MatrixXd> llt(rrr.S00);
        const Eigen::MatrixXd L = llt.matrixL();
        return 2.0 * L.diagonal().array().log().sum();
    }();

    RankTestResult out;
    out.K = K;
    out.lags = p;
    out.sample_T = n;
    out.trend = trend;
    out.cv_level = cv_level;

    double eigen_sum = 0.0; // sum of ln(1 - lambda_i) up to the current rank
    for (int r = 0; r <= K; ++r) {
        RankRow row;
        row.rank = r;
        row.parms = K * (K * (p - 1) + 1) + r * (2 * K - r);
        if (r > 0) eigen_sum += std::log1p(-rrr.eigenvalues(r - 1));
        row.log_likelihood = c - 0.5 * n * logdet_s00 - 0.5 * n * eigen_sum;
        if (r > 0) row.eigenvalue = rrr.eigenvalues(r - 1);
        if (r < K) {
            row.trace_statistic = traces[static_cast<std::size_t>(r)];
            row.critical_value = cvs[static_cast<std::size_t>(r)];
        }
        out.rows.push_back(row);
    }
    out.selected_rank = select_rank(traces, cvs);
    return out;
}

} // namespace vecmkit
