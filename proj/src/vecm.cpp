#include "vecmkit/vecm.hpp"

#include <cmath>

#include "vecmkit/stats.hpp"

namespace vecmkit {

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

// Normalize the first r eigenvectors to a leading r x r identity block,
// falling back to a pivoted row choice when that block is singular.
Eigen::MatrixXd normalize_beta(const Eigen::MatrixXd& raw, bool& pivoted) {
    const auto r = raw.cols();
    pivoted = false;
    if (r == 0) return raw;
    const Eigen::MatrixXd top = raw.topRows(r);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(top);
    if (lu.isInvertible()) {
        return raw * top.inverse();
    }
    pivoted = true;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(raw.transpose());
    qr.setThreshold(1e-10);
    if (qr.rank() < r) {
        throw Error("fit_vecm: cointegrating space is rank deficient");
    }
    const auto piv = qr.colsPermutation().indices();
    Eigen::MatrixXd block(r, r);
    for (Eigen::Index i = 0; i < r; ++i) block.row(i) = raw.row(piv(i));
    return raw * block.inverse();
}

} // namespace

int stars_from_pvalue(double p) {
    if (p < 0.01) return 3;
    if (p < 0.05) return 2;
    if (p < 0.10) return 1;
    return 0;
}

VecmModel fit_vecm(const Dataset& d, int p, int r, TrendCase trend) {
    const int K = d.K();
    const int T = d.T();
    if (r < 0 || r > K) {
        throw Error("fit_vecm: rank must lie in 0.." + std::to_string(K));
    }

    VecmModel m;
    m.K = K;
    m.p = p;
    m.r = r;
    m.trend = trend;
    m.variable_names = d.names();
    m.levels = d.matrix();
    m.periods = d.periods();

    if (r > 0) {
        const auto rrr = rrr_decompose(d, p, trend);
        m.beta = normalize_beta(rrr.eigenvectors.leftCols(r), m.pivoted_normalization);
    } else {
        m.beta.resize(K, 0);
        // r = 0 still needs a feasible sample; reuse the decomposition check.
        rrr_decompose(d, p, trend);
    }

    const int n = T - p;
    const int ndet = deterministic_columns(trend);
    const int nreg = r + K * (p - 1) + ndet;
    if (n <= nreg) {
        throw Error("fit_vecm: insufficient observations for " + std::to_string(nreg) +
                    " regressors per equation");
    }

    const Eigen::MatrixXd& y = m.levels;
    Eigen::MatrixXd Y(n, K), X(n, nreg);
    for (int i = 0; i < n; ++i) {
        const int t = p + i;
        Y.row(i) = y.row(t) - y.row(t - 1);
        if (r > 0) X.block(i, 0, 1, r) = y.row(t - 1) * m.beta;
        for (int j = 1; j <= p - 1; ++j) {
            X.block(i, r + (j - 1) * K, 1, K) = y.row(t - j) - y.row(t - j - 1);
        }
        if (ndet >= 1) X(i, r + K * (p - 1)) = 1.0;
        if (ndet == 2) X(i, r + K * (p - 1) + 1) = i + 1;
    }

    if (nreg > 0) {
        const auto fit = stats::ols(Y, X);
        m.coefficients = fit.coefficients;
        m.standard_errors = fit.coefficient_standard_errors;
        m.residuals = fit.residuals;
        m.residual_covariance = fit.residual_covariance;
    } else { // r = 0, p = 1, no deterministics: nothing to estimate
        m.coefficients.resize(0, K);
        m.standard_errors.resize(0, K);
        m.residuals = Y;
        m.residual_covariance = Y.transpose() * Y / static_cast<double>(n);
    }
    m.regressors = X;
    m.sample_T = n;

    m.z_stats.resize(nreg, K);
    m.p_values.resize(nreg, K);
    for (int i = 0; i < nreg; ++i) {
        for (int e = 0; e < K; ++e) {
            const double se = m.standard_errors(i, e);
            const double z = se > 0.0 ? m.coefficients(i, e) / se : 0.0;
            m.z_stats(i, e) = z;
            m.p_values(i, e) = stats::normal_pvalue(z);
        }
    }

    m.alpha = r > 0 ? Eigen::MatrixXd(m.coefficients.topRows(r).transpose())
                    : Eigen::MatrixXd(K, 0);
    for (int j = 1; j <= p - 1; ++j) {
        m.gamma.push_back(m.coefficients.block(r + (j - 1) * K, 0, K, K).transpose());
    }
    m.intercepts = ndet >= 1 ? Eigen::VectorXd(m.coefficients.row(r + K * (p - 1)).transpose())
                             : Eigen::VectorXd(Eigen::VectorXd::Zero(K));

    m.regressor_labels.clear();
    for (int i = 0; i < r; ++i) {
        m.regressor_labels.push_back(r == 1 ? "ECM" : "ECM" + std::to_string(i + 1));
    }
    for (int j = 1; j <= p - 1; ++j) {
        for (int v = 0; v < K; ++v) {
            m.regressor_labels.push_back(m.variable_names[static_cast<std::size_t>(v)] +
                                         "_{t-" + std::to_string(j) + "}");
        }
    }
    if (ndet >= 1) m.regressor_labels.push_back("const");
    if (ndet == 2) m.regressor_labels.push_back("trend");

    Eigen::LLT<Eigen::MatrixXd> llt(m.residual_covariance);
    if (llt.info() != Eigen::Success) {
        throw Error("fit_vecm: residual covariance is not positive definite");
    }
    const Eigen::MatrixXd L = llt.matrixL();
    const double logdet = 2.0 * L.diagonal().array().log().sum();
    m.log_likelihood = -0.5 * n * K * std::log(kTwoPi) - 0.5 * n * logdet - 0.5 * n * K;
    return m;
}

std::vector<CoefficientRow> coefficient_table(const VecmModel& m, const std::string& equation) {
    int eq = -1;
    for (std::size_t i = 0; i < m.variable_names.size(); ++i) {
        if (m.variable_names[i] == equation) eq = static_cast<int>(i);
    }
    if (eq < 0) throw Error("coefficient_table: unknown equation '" + equation + "'");

    auto make_row = [&](int reg_index) {
        CoefficientRow row;
        row.equation = equation;
        row.label = m.regressor_labels[static_cast<std::size_t>(reg_index)];
        row.estimate = m.coefficients(reg_index, eq);
        row.standard_error = m.standard_errors(reg_index, eq);
        row.z = m.z_stats(reg_index, eq);
        row.p_value = m.p_values(reg_index, eq);
        row.stars = stars_from_pvalue(row.p_value);
        return row;
    };

    std::vector<CoefficientRow> rows;
    for (int i = 0; i < m.r; ++i) rows.push_back(make_row(i));
    // Group by variable, then lag, mirroring the published table layout.
    for (int v = 0; v < m.K; ++v) {
        for (int j = 1; j <= m.p - 1; ++j) {
            rows.push_back(make_row(m.r + (j - 1) * m.K + v));
        }
    }
    for (int i = m.r + m.K * (m.p - 1); i < static_cast<int>(m.regressor_labels.size()); ++i) {
        rows.push_back(make_row(i));
    }
    return rows;
}

std::vector<TimeSeries> ecm_series(const VecmModel& m) {
    if (m.r == 0) throw Error("ecm_series: model has rank 0");
    std::vector<TimeSeries> out;
    const int n = m.sample_T;
    const int offset = static_cast<int>(m.periods.size()) - n;
    for (int i = 0; i < m.r; ++i) {
        TimeSeries s;
        s.name = m.r == 1 ? "ECM" : "ECM" + std::to_string(i + 1);
        s.periods.assign(m.periods.begin() + offset, m.periods.end());
        s.values.resize(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) {
            s.values[static_cast<std::size_t>(t)] = m.levels.row(offset + t) * m.beta.col(i);
        }
        out.push_back(std::move(s));
    }
    return out;
}

CausalitySummary causality_summary(const VecmModel& m, double level) {
    CausalitySummary summary;
    summary.level = level;
    for (int eq = 0; eq < m.K; ++eq) {
        EquationCausality c;
        c.equation = m.variable_names[static_cast<std::size_t>(eq)];
        for (int i = 0; i < m.r; ++i) {
            const bool negative = m.coefficients(i, eq) < 0.0;
            const bool significant = m.p_values(i, eq) <= level;
            if (negative && significant && !c.long_run) {
                c.long_run = true;
                // Truncated percent: -0.185603 reads as "18% per period".
                c.adjustment_speed_pct =
                    std::floor(std::abs(m.coefficients(i, eq)) * 100.0);
            }
        }
        for (int v = 0; v < m.K; ++v) {
            bool source = false;
            for (int j = 1; j <= m.p - 1; ++j) {
                if (m.p_values(m.r + (j - 1) * m.K + v, eq) <= level) source = true;
            }
            if (source) {
                c.short_run_sources.push_back(m.variable_names[static_cast<std::size_t>(v)]);
            }
        }
        summary.equations.push_back(std::move(c));
    }
    return summary;
}

Eigen::MatrixXd companion_matrix(const VecmModel& m) {
    const int K = m.K;
    const int p = m.p;
    const Eigen::MatrixXd pi = m.r > 0
                                   ? Eigen::MatrixXd(m.alpha * m.beta.transpose())
                                   : Eigen::MatrixXd(Eigen::MatrixXd::Zero(K, K));

    // Level VAR blocks: A_1 = I + Pi + Gamma_1, A_j = Gamma_j - Gamma_{j-1},
    // A_p = -Gamma_{p-1}.
    std::vector<Eigen::MatrixXd> A(static_cast<std::size_t>(p),
                                   Eigen::MatrixXd::Zero(K, K));
    A[0] = Eigen::MatrixXd::Identity(K, K) + pi;
    if (p >= 2) A[0] += m.gamma[0];
    for (int j = 2; j <= p - 1; ++j) {
        A[static_cast<std::size_t>(j - 1)] =
            m.gamma[static_cast<std::size_t>(j - 1)] - m.gamma[static_cast<std::size_t>(j - 2)];
    }
    if (p >= 2) A[static_cast<std::size_t>(p - 1)] = -m.gamma[static_cast<std::size_t>(p - 2)];

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(K * p, K * p);
    for (int j = 0; j < p; ++j) {
        comp.block(0, j * K, K, K) = A[static_cast<std::size_t>(j)];
    }
    for (int j = 1; j < p; ++j) {
        comp.block(j * K, (j - 1) * K, K, K) = Eigen::MatrixXd::Identity(K, K);
    }
    return comp;
}

} // namespace vecmkit
