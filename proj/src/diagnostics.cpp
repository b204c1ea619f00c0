#include "vecmkit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vecmkit/stats.hpp"

namespace vecmkit {

namespace {

double logdet_spd(const Eigen::MatrixXd& m, const char* what) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw Error(std::string(what) + " is not positive definite");
    }
    const Eigen::MatrixXd L = llt.matrixL();
    return 2.0 * L.diagonal().array().log().sum();
}

} // namespace

std::vector<LmRow> lm_autocorr(const VecmModel& m, int max_lag) {
    if (max_lag < 1) throw Error("lm_autocorr: max_lag must be at least 1");
    const int n = m.sample_T;
    const int K = m.K;
    const int base_reg = static_cast<int>(m.regressors.cols());
    const int d = base_reg + K; // auxiliary regressors per equation
    if (n <= d + 1) {
        throw Error("lm_autocorr: residual sample too short for the auxiliary regression");
    }

    const double logdet_restricted = logdet_spd(m.residual_covariance, "residual covariance");

    std::vector<LmRow> rows;
    for (int j = 1; j <= max_lag; ++j) {
        Eigen::MatrixXd X(n, d);
        if (base_reg > 0) X.leftCols(base_reg) = m.regressors;
        X.rightCols(K).setZero();
        for (int t = j; t < n; ++t) {
            X.block(t, base_reg, 1, K) = m.residuals.row(t - j);
        }
        const auto fit = stats::ols(m.residuals, X);
        const double logdet_unrestricted =
            logdet_spd(fit.residual_covariance, "auxiliary residual covariance");

        LmRow row;
        row.lag = j;
        row.chi2 = (n - d - 0.5) * (logdet_restricted - logdet_unrestricted);
        if (row.chi2 < 0.0) row.chi2 = 0.0;
        row.df = K * K;
        row.p_value = stats::chi2_sf(row.chi2, row.df);
        rows.push_back(row);
    }
    return rows;
}

std::vector<NormalityRow> normality_test(const VecmModel& m) {
    const int n = m.sample_T;
    const int K = m.K;
    if (n < 8) throw Error("normality_test: need at least 8 residual observations");

    Eigen::MatrixXd centered = m.residuals;
    centered.rowwise() -= m.residuals.colwise().mean();
    const Eigen::MatrixXd sigma = centered.transpose() * centered / static_cast<double>(n);
    for (int i = 0; i < K; ++i) {
        if (sigma(i, i) <= 0.0) {
            throw Error("normality_test: residual column '" +
                        m.variable_names[static_cast<std::size_t>(i)] + "' is degenerate");
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw Error("normality_test: residual covariance is not positive definite");
    }
    // w_t = L^-1 u_t: unit-variance, cross-sectionally uncorrelated scores.
    const Eigen::MatrixXd w =
        llt.matrixL().solve(centered.transpose()).transpose();

    std::vector<NormalityRow> rows;
    double total = 0.0;
    for (int i = 0; i < K; ++i) {
        const auto col = w.col(i).array();
        const double skew = col.cube().mean();
        const double kurt = col.pow(4).mean();
        NormalityRow row;
        row.equation = m.variable_names[static_cast<std::size_t>(i)];
        row.chi2 = n * (skew * skew / 6.0 + (kurt - 3.0) * (kurt - 3.0) / 24.0);
        row.df = 2;
        row.p_value = stats::chi2_sf(row.chi2, row.df);
        total += row.chi2;
        rows.push_back(row);
    }
    NormalityRow all;
    all.equation = "ALL";
    all.chi2 = total;
    all.df = 2 * K;
    all.p_value = stats::chi2_sf(total, all.df);
    rows.push_back(all);
    return rows;
}

StabilityReport stability_check(const VecmModel& m, double tolerance) {
    const Eigen::MatrixXd comp = companion_matrix(m);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp);
    if (solver.info() != Eigen::Success) {
        throw Error("stability_check: eigensolver failed");
    }

    const int dim = static_cast<int>(comp.rows());
    std::vector<std::complex<double>> eig(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) eig[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    std::sort(eig.begin(), eig.end(), [](const auto& a, const auto& b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag(); // conjugates print + before -
    });

    StabilityReport report;
    report.eigenvalues = eig;
    report.moduli.reserve(eig.size());
    for (const auto& e : eig) report.moduli.push_back(std::abs(e));

    // The K - r moduli nearest one are the rank restriction's unit roots.
    const int want = m.K - m.r;
    std::vector<std::size_t> order(report.moduli.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(report.moduli[a] - 1.0) < std::abs(report.moduli[b] - 1.0);
    });
    std::vector<bool> imposed(report.moduli.size(), false);
    int flagged = 0;
    for (int i = 0; i < want && i < static_cast<int>(order.size()); ++i) {
        if (std::abs(report.moduli[order[static_cast<std::size_t>(i)]] - 1.0) < tolerance) {
            imposed[order[static_cast<std::size_t>(i)]] = true;
            ++flagged;
        }
    }
    report.imposed_unit_moduli = flagged;

    report.stable = true;
    for (std::size_t i = 0; i < report.moduli.size(); ++i) {
        if (!imposed[i] && report.moduli[i] >= 1.0 - tolerance) {
            report.stable = false;
        }
    }
    return report;
}

} // namespace vecmkit
