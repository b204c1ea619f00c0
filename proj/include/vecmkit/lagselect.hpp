#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vecmkit/dataset.hpp"

namespace vecmkit {

/// VAR(p) fit by equation-wise least squares (identical to the joint MLE for
/// an unrestricted VAR). Residual covariance uses the ML divisor T.
struct VarFit {
    int lag_order = 0;
    Eigen::VectorXd intercept;                  // K
    std::vector<Eigen::MatrixXd> coefficients;  // A_1..A_p, row i = equation i
    Eigen::MatrixXd residuals;                  // sample_T x K
    Eigen::MatrixXd residual_covariance;        // K x K, divisor sample_T
    Eigen::MatrixXd coefficient_standard_errors; // (1 + K p) x K, intercept row first
    double log_likelihood = 0.0;
    int sample_T = 0;
};

/// Fit a VAR(p) with intercept on the dataset's levels. p = 0 fits
/// intercepts only. `skip` pins the estimation sample to rows skip+1..T so
/// different lag orders stay comparable; it defaults to p.
VarFit fit_var(const Dataset& d, int p, std::optional<int> skip = std::nullopt);

struct LagRow {
    int lag = 0;
    double log_likelihood = 0.0;
    double lr_statistic = 0.0; // vs lag - 1
    int df = 0;                // K^2
    double p_value = 1.0;
    double fpe = 0.0;
    double aic = 0.0;
    double hqic = 0.0;
    double sbic = 0.0;
};

enum class LagCriterion { fpe, aic, hqic, sbic };

std::string to_string(LagCriterion c);

struct LagTable {
    std::vector<LagRow> rows;                 // lags 1..pmax
    std::map<LagCriterion, int> starred_minima;
    int K = 0;
    int sample_T = 0; // common sample, T - pmax
};

/// Information-criterion table over lags 1..pmax, every candidate fitted on
/// the common sample implied by pmax. Criteria follow the per-T
/// normalization: AIC = -2 LL/T + 2n/T, HQIC and SBIC analogous, and
/// FPE = det(Sigma) ((T + m)/(T - m))^K with m regressors per equation.
LagTable lag_order_table(const Dataset& d, int pmax);

/// Largest pmax whose common-sample VAR still has a positive definite
/// residual covariance.
int max_feasible_lag(int T, int K);

enum class LagRule { majority, aic, sbic, hqic, fpe };

LagRule parse_lag_rule(const std::string& text);

/// Majority rule picks the lag starred by the most criteria, ties toward the
/// smaller lag; the single-criterion rules read the table directly.
int select_lag(const LagTable& t, LagRule rule = LagRule::majority);

} // namespace vecmkit
