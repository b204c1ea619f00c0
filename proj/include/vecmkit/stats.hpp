#pragma once

#include <Eigen/Dense>

#include "vecmkit/error.hpp"

namespace vecmkit::stats {

/// Multivariate least-squares fit of Y (T x m) on X (T x k).
/// residual_covariance and the coefficient standard errors both use the
/// maximum-likelihood divisor T, so log-likelihoods built from this fit agree
/// with the reduced-rank likelihood ladder.
struct OlsFit {
    Eigen::MatrixXd coefficients;               // k x m
    Eigen::MatrixXd residuals;                  // T x m
    Eigen::MatrixXd residual_covariance;        // m x m, divisor T
    Eigen::MatrixXd coefficient_standard_errors; // k x m
};

/// Errors if T <= k or X is rank deficient (the message names the dependent
/// columns).
OlsFit ols(const Eigen::MatrixXd& Y, const Eigen::MatrixXd& X);

/// Bartlett-kernel long-run variance of a scalar sequence:
///   lambda^2 = g0 + 2 * sum_{j=1..bandwidth} (1 - j/(bandwidth+1)) * gj
/// with autocovariances about the sample mean, divisor n. Bandwidth 0 is the
/// plain sample variance; an all-zero input returns 0.
double newey_west_lrv(const Eigen::VectorXd& residuals, int bandwidth);

struct EigenSolution {
    Eigen::VectorXd eigenvalues;  // descending
    Eigen::MatrixXd eigenvectors; // column i pairs with eigenvalue i, v'Bv = 1
};

/// Solve A v = lambda B v for symmetric A and symmetric positive definite B,
/// by Cholesky reduction to a standard symmetric problem. Eigenvalues come
/// out real, sorted descending, with a deterministic sign convention on the
/// vectors.
EigenSolution gen_eig_sym(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

/// Upper-tail probability of the chi-square distribution, via the
/// regularized incomplete gamma function (series / continued-fraction
/// split). Absolute error below 1e-10 over the tested range.
double chi2_sf(double x, int df);

/// Standard normal upper tail P(Z > z).
double normal_sf(double z);

/// Two-sided normal p-value 2 * P(Z > |z|).
double normal_pvalue(double z);

/// Inverse standard normal CDF (Wichura's AS241, double precision).
double normal_quantile(double p);

} // namespace vecmkit::stats
