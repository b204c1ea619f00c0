#include "vecmkit/unitroot.hpp"

#include <cmath>

#include "vecmkit/stats.hpp"

namespace vecmkit {

Deterministic parse_deterministic(const std::string& text) {
    if (text == "none") return Deterministic::none;
    if (text == "constant") return Deterministic::constant;
    if (text == "trend" || text == "constant_trend") return Deterministic::constant_trend;
    throw InputError("unknown deterministic case '" + text + "' (expected none|constant|trend)");
}

std::string to_string(Deterministic d) {
    switch (d) {
        case Deterministic::none: return "none";
        case Deterministic::constant: return "constant";
        case Deterministic::constant_trend: return "trend";
    }
    return "?";
}

std::string to_string(IntegrationOrder o) {
    switch (o) {
        case IntegrationOrder::I0: return "I(0)";
        case IntegrationOrder::I1: return "I(1)";
        case IntegrationOrder::higher: return "I(2+)";
    }
    return "?";
}

std::array<double, 3> pp_critical_values(Deterministic d) {
    switch (d) {
        case Deterministic::none: return {-2.58, -1.95, -1.62};
        case Deterministic::constant: return {-3.43, -2.86, -2.57};
        case Deterministic::constant_trend: return {-3.96, -3.41, -3.13};
    }
    throw Error("unreachable deterministic case");
}

namespace {

int default_bandwidth(int T) {
    return static_cast<int>(std::floor(4.0 * std::pow(T / 100.0, 2.0 / 9.0)));
}

int stars_from_cvs(double z, const std::array<double, 3>& cv) {
    if (z < cv[0]) return 3;
    if (z < cv[1]) return 2;
    if (z < cv[2]) return 1;
    return 0;
}

double cv_at_level(const std::array<double, 3>& cv, double level) {
    if (level <= 0.01) return cv[0];
    if (level <= 0.05) return cv[1];
    return cv[2];
}

} // namespace

PpResult pp_test(const TimeSeries& s, Deterministic deterministic,
                 std::optional<int> bandwidth, double level) {
    s.validate();
    const int n = static_cast<int>(s.length());
    if (n < 10) {
        throw Error("pp_test: series '" + s.name + "' too short (need length >= 10)");
    }
    bool constant_series = true;
    for (double v : s.values) {
        if (v != s.values[0]) { constant_series = false; break; }
    }
    if (constant_series) {
        throw Error("pp_test: series '" + s.name + "' is constant");
    }

    const int T = n - 1; // regression sample
    Eigen::VectorXd dy(T), ylag(T);
    for (int t = 0; t < T; ++t) {
        dy(t) = s.values[static_cast<std::size_t>(t + 1)] - s.values[static_cast<std::size_t>(t)];
        ylag(t) = s.values[static_cast<std::size_t>(t)];
    }

    int ndet = 0;
    switch (deterministic) {
        case Deterministic::none: ndet = 0; break;
        case Deterministic::constant: ndet = 1; break;
        case Deterministic::constant_trend: ndet = 2; break;
    }
    Eigen::MatrixXd X(T, ndet + 1);
    int col = 0;
    if (ndet >= 1) X.col(col++).setOnes();
    if (ndet == 2) {
        for (int t = 0; t < T; ++t) X(t, col) = t + 1;
        ++col;
    }
    X.col(col) = ylag; // rho coefficient is the last column

    const auto fit = stats::ols(dy, X);
    const int k = static_cast<int>(X.cols());
    const Eigen::VectorXd resid = fit.residuals.col(0);

    const double rss = resid.squaredNorm();
    const double s2 = rss / (T - k);                          // OLS variance
    const double g0 = stats::newey_west_lrv(resid, 0);        // divisor T
    const int bw = bandwidth.value_or(default_bandwidth(T));
    const double lrv = stats::newey_west_lrv(resid, bw);
    if (lrv <= 0.0) {
        throw Error("pp_test: degenerate residual variance for '" + s.name + "'");
    }

    // Recompute the rho standard error on the OLS (T - k) convention; the
    // shared kernel reports ML-scaled errors.
    const double se_ml = fit.coefficient_standard_errors(k - 1, 0);
    const double se_rho = se_ml * std::sqrt(s2 / fit.residual_covariance(0, 0));
    const double t_rho = fit.coefficients(k - 1, 0) / se_rho;

    const double z_t = std::sqrt(g0 / lrv) * t_rho -
                       T * (lrv - g0) * se_rho / (2.0 * std::sqrt(lrv) * std::sqrt(s2));

    PpResult res;
    res.variable = s.name;
    res.deterministic = deterministic;
    res.bandwidth = bw;
    res.z_t = z_t;
    res.critical_values = pp_critical_values(deterministic);
    res.level = level;
    res.sample_T = T;
    res.significance_stars = stars_from_cvs(z_t, res.critical_values);
    res.decision = z_t < cv_at_level(res.critical_values, level)
                       ? UnitRootDecision::reject_unit_root
                       : UnitRootDecision::fail_to_reject;
    return res;
}

IntegrationVerdict classify_integration(const TimeSeries& s, int max_d, double level,
                                        Deterministic deterministic) {
    if (max_d < 1) throw Error("classify_integration: max_d must be at least 1");

    IntegrationVerdict v;
    v.variable = s.name;
    v.level_result = pp_test(s, deterministic, std::nullopt, level);
    v.diff_result = pp_test(difference(s, 1), deterministic, std::nullopt, level);

    if (v.level_result.decision == UnitRootDecision::reject_unit_root) {
        v.order = IntegrationOrder::I0;
        return v;
    }
    TimeSeries cur = s;
    for (int d = 1; d <= max_d; ++d) {
        cur = difference(cur, 1);
        const auto r = d == 1 ? v.diff_result : pp_test(cur, deterministic, std::nullopt, level);
        if (r.decision == UnitRootDecision::reject_unit_root) {
            // Only I(0) and I(1) are named orders; anything needing two or
            // more differencings reports as `higher`.
            v.order = d == 1 ? IntegrationOrder::I1 : IntegrationOrder::higher;
            return v;
        }
    }
    v.order = IntegrationOrder::higher;
    return v;
}

} // namespace vecmkit
