#pragma once

#include <complex>
#include <string>
#include <vector>

#include "vecmkit/vecm.hpp"

namespace vecmkit {

struct LmRow {
    int lag = 0;
    double chi2 = 0.0;
    int df = 0; // K^2
    double p_value = 1.0;
};

/// Lagrange-multiplier test for residual autocorrelation at lags 1..max_lag.
/// For each lag j the residuals are regressed on the model's regressors plus
/// the lag-j residuals (initial values zero-filled); the statistic is
/// (T - d - 0.5) ln(det S_restricted / det S_unrestricted) with d the number
/// of regressors per equation in the auxiliary regression.
std::vector<LmRow> lm_autocorr(const VecmModel& m, int max_lag);

struct NormalityRow {
    std::string equation; // variable name, or "ALL"
    double chi2 = 0.0;
    int df = 0; // 2 per equation, 2K for ALL
    double p_value = 1.0;
};

/// Jarque-Bera normality test on Cholesky-orthogonalized residuals
/// (variables in dataset order), one row per equation plus the joint ALL row.
std::vector<NormalityRow> normality_test(const VecmModel& m);

struct StabilityReport {
    std::vector<std::complex<double>> eigenvalues; // companion eigenvalues
    std::vector<double> moduli;                    // sorted descending
    int imposed_unit_moduli = 0;                   // K - r for a clean fit
    bool stable = false;
};

/// Companion-matrix eigenvalue check: the K - r moduli closest to one are
/// the rank restriction's imposed unit roots; the model is stable iff every
/// remaining modulus is below 1 - tolerance.
StabilityReport stability_check(const VecmModel& m, double tolerance = 1e-6);

} // namespace vecmkit
