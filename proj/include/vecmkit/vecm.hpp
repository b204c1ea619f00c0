#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vecmkit/dataset.hpp"
#include "vecmkit/johansen.hpp"

namespace vecmkit {

/// Fitted vector error correction model
///   dy_t = nu + alpha (beta' y_{t-1}) + sum_j Gamma_j dy_{t-j} + eps_t.
/// beta carries the Phillips normalization (leading r x r identity).
/// Coefficient statistics are stored regressor-major: rows are the r error
/// correction terms, then the lagged differences grouped by lag, then the
/// deterministics; one column per equation. p-values are asymptotic normal.
struct VecmModel {
    int K = 0;
    int p = 1;
    int r = 0;
    TrendCase trend = TrendCase::constant;
    std::vector<std::string> variable_names;

    Eigen::MatrixXd alpha; // K x r
    Eigen::MatrixXd beta;  // K x r
    std::vector<Eigen::MatrixXd> gamma; // p-1 short-run matrices, K x K
    Eigen::VectorXd intercepts;         // K (zero when trend = none)

    Eigen::MatrixXd coefficients;    // n_reg x K
    Eigen::MatrixXd standard_errors; // n_reg x K
    Eigen::MatrixXd z_stats;         // n_reg x K
    Eigen::MatrixXd p_values;        // n_reg x K
    std::vector<std::string> regressor_labels;

    Eigen::MatrixXd residuals;           // sample_T x K
    Eigen::MatrixXd residual_covariance; // K x K, divisor sample_T
    double log_likelihood = 0.0;
    int sample_T = 0;

    Eigen::MatrixXd regressors; // sample_T x n_reg design matrix
    Eigen::MatrixXd levels;     // full T x K level data
    std::vector<int> periods;   // full period labels

    bool pivoted_normalization = false; // fallback when the leading block is singular
};

/// Two-step maximum-likelihood VECM: beta from the reduced-rank
/// decomposition, everything else by least squares given beta. r = 0
/// degenerates to a VAR in first differences, r = K to the unrestricted
/// level VAR.
VecmModel fit_vecm(const Dataset& d, int p, int r, TrendCase trend = TrendCase::constant);

struct CoefficientRow {
    std::string equation;
    std::string label;
    double estimate = 0.0;
    double standard_error = 0.0;
    double z = 0.0;
    double p_value = 0.0;
    int stars = 0; // p < .01 / .05 / .10
};

int stars_from_pvalue(double p);

/// Table-4-shaped rows for one equation: error correction terms first, then
/// each variable's lagged differences in order, then the deterministics.
std::vector<CoefficientRow> coefficient_table(const VecmModel& m, const std::string& equation);

/// The r error-correction series ecm_i(t) = beta_i' y_t over the estimation
/// sample.
std::vector<TimeSeries> ecm_series(const VecmModel& m);

struct EquationCausality {
    std::string equation;
    bool long_run = false;
    double adjustment_speed_pct = 0.0; // |ecm coefficient| * 100, rounded
    std::vector<std::string> short_run_sources;
};

struct CausalitySummary {
    double level = 0.10;
    std::vector<EquationCausality> equations;
};

/// Mechanical readout: long-run causality iff an error-correction
/// coefficient is negative and significant at `level`; short-run sources are
/// the variables with at least one significant lagged-difference term.
CausalitySummary causality_summary(const VecmModel& m, double level = 0.10);

/// Companion matrix of the implied level VAR, dimension K p.
Eigen::MatrixXd companion_matrix(const VecmModel& m);

} // namespace vecmkit
