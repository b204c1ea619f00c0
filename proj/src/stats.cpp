#include "vecmkit/stats.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace vecmkit::stats {

OlsFit ols(const Eigen::MatrixXd& Y, const Eigen::MatrixXd& X) {
    const auto T = X.rows();
    const auto k = X.cols();
    if (Y.rows() != T) {
        throw Error("ols: Y has " + std::to_string(Y.rows()) + " rows, X has " +
                    std::to_string(T));
    }
    if (T <= k) {
        throw Error("ols: need more observations (" + std::to_string(T) +
                    ") than regressors (" + std::to_string(k) + ")");
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        const auto perm = qr.colsPermutation().indices();
        std::string dep;
        for (Eigen::Index i = qr.rank(); i < k; ++i) {
            if (!dep.empty()) dep += ", ";
            dep += std::to_string(perm(i));
        }
        throw Error("ols: X is rank deficient (rank " + std::to_string(qr.rank()) + " of " +
                    std::to_string(k) + "); dependent columns: " + dep);
    }

    OlsFit fit;
    fit.coefficients = qr.solve(Y);
    fit.residuals = Y - X * fit.coefficients;
    fit.residual_covariance =
        fit.residuals.transpose() * fit.residuals / static_cast<double>(T);

    const Eigen::MatrixXd xtx_inv =
        (X.transpose() * X)
            .ldlt()
            .solve(Eigen::MatrixXd::Identity(k, k));
    fit.coefficient_standard_errors.resize(k, Y.cols());
    for (Eigen::Index e = 0; e < Y.cols(); ++e) {
        const double sigma2 = fit.residual_covariance(e, e);
        fit.coefficient_standard_errors.col(e) =
            (xtx_inv.diagonal() * sigma2).cwiseMax(0.0).cwiseSqrt();
    }
    return fit;
}

double newey_west_lrv(const Eigen::VectorXd& residuals, int bandwidth) {
    const auto n = residuals.size();
    if (bandwidth < 0) throw Error("newey_west_lrv: negative bandwidth");
    if (n < bandwidth + 2) {
        throw Error("newey_west_lrv: need length >= bandwidth + 2");
    }
    const Eigen::VectorXd e = residuals.array() - residuals.mean();
    const double g0 = e.squaredNorm() / static_cast<double>(n);
    if (g0 == 0.0) return 0.0; // degenerate: no variation
    double lrv = g0;
    for (int j = 1; j <= bandwidth; ++j) {
        const double gj =
            e.tail(n - j).dot(e.head(n - j)) / static_cast<double>(n);
        const double w = 1.0 - static_cast<double>(j) / (bandwidth + 1.0);
        lrv += 2.0 * w * gj;
    }
    return lrv < 0.0 ? 0.0 : lrv;
}

EigenSolution gen_eig_sym(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows()) {
        throw Error("gen_eig_sym: A and B must be square with equal dimension");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(B);
    if (llt.info() != Eigen::Success) {
        throw Error("gen_eig_sym: B is not positive definite");
    }

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        0.5 * (A + A.transpose()), 0.5 * (B + B.transpose()),
        Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (solver.info() != Eigen::Success) {
        throw Error("gen_eig_sym: eigensolver failed to converge");
    }

    const auto n = A.rows();
    EigenSolution sol;
    sol.eigenvalues.resize(n);
    sol.eigenvectors.resize(n, n);
    // Eigen returns ascending order; reverse, and fix each vector's sign so
    // its largest-magnitude entry is positive.
    for (Eigen::Index i = 0; i < n; ++i) {
        sol.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
        Eigen::VectorXd v = solver.eigenvectors().col(n - 1 - i);
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        if (v(imax) < 0.0) v = -v;
        sol.eigenvectors.col(i) = v;
    }
    return sol;
}

namespace {

// Regularized lower incomplete gamma P(a, x) by series expansion (x < a + 1).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz continued fraction
// (x >= a + 1).
double gamma_q_contfrac(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double chi2_sf(double x, int df) {
    if (df <= 0) throw Error("chi2_sf: df must be positive");
    if (x < 0.0) throw Error("chi2_sf: x must be non-negative");
    if (x == 0.0) return 1.0;
    const double a = 0.5 * df;
    const double xg = 0.5 * x;
    if (xg < a + 1.0) {
        return 1.0 - gamma_p_series(a, xg);
    }
    return gamma_q_contfrac(a, xg);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double normal_pvalue(double z) { return 2.0 * normal_sf(std::abs(z)); }

double normal_quantile(double p) {
    // Wichura (1988), algorithm AS241, PPND16.
    if (!(p > 0.0 && p < 1.0)) {
        throw Error("normal_quantile: p must lie in (0, 1)");
    }
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                  3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -val : val;
}

} // namespace vecmkit::stats
