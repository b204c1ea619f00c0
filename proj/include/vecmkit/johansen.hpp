#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vecmkit/dataset.hpp"

namespace vecmkit {

enum class TrendCase { none, constant, trend };

TrendCase parse_trend(const std::string& text);
std::string to_string(TrendCase t);

/// Reduced-rank regression pieces of the Johansen procedure.
struct RrrResult {
    Eigen::VectorXd eigenvalues;  // K values in [0, 1), descending
    Eigen::MatrixXd eigenvectors; // K x K candidate cointegrating directions
    Eigen::MatrixXd S00, S01, S11;
    int sample_T = 0;
    TrendCase trend = TrendCase::constant;
};

/// Partial out the short-run dynamics: regress dy_t and y_{t-1} on the p-1
/// lagged differences plus deterministics, form the product-moment matrices
/// S_ij = R_i' R_j / T, and solve S10 S00^-1 S01 v = lambda S11 v.
RrrResult rrr_decompose(const Dataset& d, int p, TrendCase trend = TrendCase::constant);

/// trace(r) = -T sum_{i>r} ln(1 - lambda_i), r = 0..K-1.
std::vector<double> trace_statistics(const Eigen::VectorXd& eigenvalues, int T);

/// Smallest r whose trace statistic drops below its critical value; K if
/// every hypothesis is rejected.
int select_rank(const std::vector<double>& trace, const std::vector<double>& critical_values);

/// Embedded asymptotic trace critical values for the unrestricted-constant
/// case, K - r = 1..5; level is 0.05 or 0.01.
double trace_critical_value(int k_minus_r, double level = 0.05);

struct RankRow {
    int rank = 0;
    int parms = 0;
    double log_likelihood = 0.0;
    std::optional<double> eigenvalue;      // absent at rank 0
    std::optional<double> trace_statistic; // absent at rank K
    std::optional<double> critical_value;  // absent at rank K
};

struct RankTestResult {
    std::vector<RankRow> rows; // r = 0..K
    int selected_rank = 0;
    int K = 0;
    int lags = 0;
    int sample_T = 0;
    TrendCase trend = TrendCase::constant;
    double cv_level = 0.05;
};

/// Johansen trace-test ladder: log-likelihoods
///   LL(r) = -(T K/2)(ln 2pi + 1) - (T/2) ln det S00 - (T/2) sum_{i<=r} ln(1 - lambda_i)
/// and parameter counts parms(r) = K (K (p-1) + 1) + r (2K - r) for the
/// constant case. Requires trend = constant (the only case with embedded
/// critical values) and K <= 5.
RankTestResult rank_table(const Dataset& d, int p, TrendCase trend = TrendCase::constant,
                          double cv_level = 0.05);

} // namespace vecmkit
