#pragma once

#include <array>
#include <optional>
#include <string>

#include "vecmkit/dataset.hpp"

namespace vecmkit {

enum class Deterministic { none, constant, constant_trend };

Deterministic parse_deterministic(const std::string& text);
std::string to_string(Deterministic d);

enum class UnitRootDecision { reject_unit_root, fail_to_reject };

/// Phillips-Perron Z_t result for one series.
struct PpResult {
    std::string variable;
    Deterministic deterministic = Deterministic::constant;
    int bandwidth = 0;
    double z_t = 0.0;
    std::array<double, 3> critical_values{}; // 1%, 5%, 10%
    UnitRootDecision decision = UnitRootDecision::fail_to_reject;
    int significance_stars = 0; // 3/2/1 against the 1%/5%/10% critical values
    double level = 0.05;
    int sample_T = 0;
};

/// Phillips-Perron unit-root test. Fits dy_t on (deterministics, y_{t-1}),
/// then corrects the Dickey-Fuller t statistic nonparametrically with the
/// Bartlett long-run variance of the residuals:
///   Z_t = sqrt(g0 / lrv) * t_rho - T (lrv - g0) se(rho) / (2 sqrt(lrv) s)
/// where g0 is the residual variance (divisor T) and s^2 the OLS variance
/// (divisor T - k). Default bandwidth floor(4 (T/100)^{2/9}). Critical
/// values are the embedded asymptotic table for the chosen deterministic.
PpResult pp_test(const TimeSeries& s,
                 Deterministic deterministic = Deterministic::constant,
                 std::optional<int> bandwidth = std::nullopt,
                 double level = 0.05);

enum class IntegrationOrder { I0, I1, higher };

std::string to_string(IntegrationOrder o);

struct IntegrationVerdict {
    std::string variable;
    IntegrationOrder order = IntegrationOrder::higher;
    PpResult level_result;
    PpResult diff_result; // first difference
};

/// Apply pp_test to the series and its successive differences until the
/// unit-root null is rejected; order = number of differencings needed, or
/// `higher` past max_d.
IntegrationVerdict classify_integration(const TimeSeries& s, int max_d = 2,
                                        double level = 0.05,
                                        Deterministic deterministic = Deterministic::constant);

/// Embedded asymptotic critical values (1%, 5%, 10%) per deterministic case.
std::array<double, 3> pp_critical_values(Deterministic d);

} // namespace vecmkit
