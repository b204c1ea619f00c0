#include "vecmkit/lagselect.hpp"

#include <cmath>

#include "vecmkit/stats.hpp"

namespace vecmkit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double gaussian_ll(int T, int K, double logdet_sigma) {
    return -0.5 * T * K * std::log(kTwoPi) - 0.5 * T * logdet_sigma - 0.5 * T * K;
}

double logdet_spd(const Eigen::MatrixXd& m) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw Error("residual covariance is not positive definite");
    }
    const Eigen::MatrixXd L = llt.matrixL();
    return 2.0 * L.diagonal().array().log().sum();
}

} // namespace

std::string to_string(LagCriterion c) {
    switch (c) {
        case LagCriterion::fpe: return "FPE";
        case LagCriterion::aic: return "AIC";
        case LagCriterion::hqic: return "HQIC";
        case LagCriterion::sbic: return "SBIC";
    }
    return "?";
}

VarFit fit_var(const Dataset& d, int p, std::optional<int> skip_opt) {
    if (p < 0) throw Error("fit_var: negative lag order");
    const int T = d.T();
    const int K = d.K();
    const int skip = skip_opt.value_or(p);
    if (skip < p) throw Error("fit_var: skip must be at least p");
    const int n = T - skip;
    const int m = K * p + 1; // regressors per equation
    if (n <= m) {
        throw Error("fit_var: insufficient observations (" + std::to_string(n) +
                    " for " + std::to_string(m) + " regressors per equation)");
    }

    const Eigen::MatrixXd y = d.matrix();
    Eigen::MatrixXd Y(n, K), X(n, m);
    for (int i = 0; i < n; ++i) {
        const int t = skip + i;
        Y.row(i) = y.row(t);
        X(i, 0) = 1.0;
        for (int j = 1; j <= p; ++j) {
            X.block(i, 1 + (j - 1) * K, 1, K) = y.row(t - j);
        }
    }

    const auto fit = stats::ols(Y, X);

    VarFit out;
    out.lag_order = p;
    out.sample_T = n;
    out.intercept = fit.coefficients.row(0).transpose();
    for (int j = 1; j <= p; ++j) {
        // ols stacks regressors in rows; equation i reads column i.
        out.coefficients.push_back(
            fit.coefficients.block(1 + (j - 1) * K, 0, K, K).transpose());
    }
    out.residuals = fit.residuals;
    out.residual_covariance = fit.residual_covariance;
    out.coefficient_standard_errors = fit.coefficient_standard_errors;
    out.log_likelihood = gaussian_ll(n, K, logdet_spd(fit.residual_covariance));
    return out;
}

int max_feasible_lag(int T, int K) {
    // Largest p with T - p - (K p + 1) >= K, so the VAR(p) residual
    // covariance can still be positive definite on the common sample.
    return (T - K - 1) / (K + 1);
}

LagTable lag_order_table(const Dataset& d, int pmax) {
    if (pmax < 1) throw Error("lag_order_table: pmax must be at least 1");
    const int T = d.T();
    const int K = d.K();
    const int n = T - pmax;
    if (n - (K * pmax + 1) < K) {
        throw Error("lag_order_table: sample too short for pmax = " + std::to_string(pmax) +
                    " (largest feasible is " + std::to_string(max_feasible_lag(T, K)) + ")");
    }

    LagTable table;
    table.K = K;
    table.sample_T = n;

    double prev_ll = fit_var(d, 0, pmax).log_likelihood;
    for (int p = 1; p <= pmax; ++p) {
        const auto fit = fit_var(d, p, pmax);
        const int m = K * p + 1;       // regressors per equation
        const int npar = K * m;        // free parameters
        const double logdet = logdet_spd(fit.residual_covariance);

        LagRow row;
        row.lag = p;
        row.log_likelihood = fit.log_likelihood;
        row.lr_statistic = 2.0 * (fit.log_likelihood - prev_ll);
        if (row.lr_statistic < 0.0 && row.lr_statistic > -1e-9) row.lr_statistic = 0.0;
        row.df = K * K;
        row.p_value = stats::chi2_sf(row.lr_statistic, row.df);
        row.fpe = std::exp(logdet) *
                  std::pow((n + m) / static_cast<double>(n - m), K);
        row.aic = -2.0 * fit.log_likelihood / n + 2.0 * npar / static_cast<double>(n);
        row.hqic = -2.0 * fit.log_likelihood / n +
                   2.0 * npar * std::log(std::log(n)) / n;
        row.sbic = -2.0 * fit.log_likelihood / n + npar * std::log(n) / static_cast<double>(n);
        table.rows.push_back(row);
        prev_ll = fit.log_likelihood;
    }

    auto argmin = [&](auto field) {
        int best = table.rows.front().lag;
        double best_v = field(table.rows.front());
        for (const auto& r : table.rows) {
            if (field(r) < best_v) {
                best_v = field(r);
                best = r.lag;
            }
        }
        return best;
    };
    table.starred_minima[LagCriterion::fpe] = argmin([](const LagRow& r) { return r.fpe; });
    table.starred_minima[LagCriterion::aic] = argmin([](const LagRow& r) { return r.aic; });
    table.starred_minima[LagCriterion::hqic] = argmin([](const LagRow& r) { return r.hqic; });
    table.starred_minima[LagCriterion::sbic] = argmin([](const LagRow& r) { return r.sbic; });
    return table;
}

LagRule parse_lag_rule(const std::string& text) {
    if (text == "majority") return LagRule::majority;
    if (text == "aic") return LagRule::aic;
    if (text == "sbic") return LagRule::sbic;
    if (text == "hqic") return LagRule::hqic;
    if (text == "fpe") return LagRule::fpe;
    throw InputError("unknown lag rule '" + text + "'");
}

int select_lag(const LagTable& t, LagRule rule) {
    if (t.rows.empty()) throw Error("select_lag: empty table");
    switch (rule) {
        case LagRule::aic: return t.starred_minima.at(LagCriterion::aic);
        case LagRule::sbic: return t.starred_minima.at(LagCriterion::sbic);
        case LagRule::hqic: return t.starred_minima.at(LagCriterion::hqic);
        case LagRule::fpe: return t.starred_minima.at(LagCriterion::fpe);
        case LagRule::majority: break;
    }
    std::map<int, int> votes;
    for (const auto& [crit, lag] : t.starred_minima) votes[lag] += 1;
    int best_lag = t.rows.front().lag;
    int best_votes = -1;
    for (const auto& [lag, count] : votes) { // ascending lag: ties go small
        if (count > best_votes) {
            best_votes = count;
            best_lag = lag;
        }
    }
    return best_lag;
}

} // namespace vecmkit
