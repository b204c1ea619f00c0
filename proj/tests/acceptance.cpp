// Acceptance suite: one check function per criterion, one PASS/FAIL line
// each, nonzero exit if anything fails. Tolerances are pinned in the checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "vecmkit/diagnostics.hpp"
#include "vecmkit/johansen.hpp"
#include "vecmkit/lagselect.hpp"
#include "vecmkit/pipeline.hpp"
#include "vecmkit/simulate.hpp"
#include "vecmkit/stats.hpp"
#include "vecmkit/unitroot.hpp"
#include "vecmkit/vecm.hpp"

using namespace vecmkit;

namespace {

struct Harness {
    int failures = 0;

    void criterion(int number, const std::string& title,
                   const std::function<void(std::ostringstream&)>& body) {
        std::ostringstream detail;
        bool ok = true;
        const auto start = std::chrono::steady_clock::now();
        try {
            body(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail << " exception: " << e.what();
        }
        if (detail.str().find("FAIL") != std::string::npos) ok = false;
        const auto secs = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        std::printf("[%s] criterion %2d: %s (%.1fs)%s\n", ok ? "PASS" : "FAIL", number,
                    title.c_str(), secs, detail.str().c_str());
        if (!ok) ++failures;
    }
};

void expect(std::ostringstream& out, bool cond, const std::string& what) {
    if (!cond) out << " FAIL{" << what << "}";
}

void expect_near(std::ostringstream& out, double got, double want, double tol,
                 const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
        out << " FAIL{" << what << ": got " << got << ", want " << want << " +/- " << tol
            << "}";
    }
}

Eigen::VectorXd table3_eigenvalues() {
    Eigen::VectorXd lam(5);
    lam << 0.94906, 0.87755, 0.71531, 0.42532, 0.14850;
    return lam;
}

TimeSeries single_series(sim::ProcessKind kind, int T, std::uint64_t seed) {
    sim::ProcessSpec spec;
    spec.kind = kind;
    spec.T = T;
    spec.seed = seed;
    return sim::simulate(spec).series(0);
}

TimeSeries ar1_series(double phi, int T, std::uint64_t seed) {
    sim::ProcessSpec spec;
    spec.kind = sim::ProcessKind::var;
    spec.K = 1;
    spec.T = T;
    spec.seed = seed;
    spec.var_coefficients = {Eigen::MatrixXd::Constant(1, 1, phi)};
    return sim::simulate(spec).series(0);
}

Dataset rank1_panel(int T, std::uint64_t seed) {
    sim::ProcessSpec spec;
    spec.kind = sim::ProcessKind::vecm;
    spec.K = 3;
    spec.T = T;
    spec.seed = seed;
    spec.alpha = Eigen::MatrixXd(3, 1);
    spec.alpha << -0.4, 0.15, 0.1;
    spec.beta = Eigen::MatrixXd(3, 1);
    spec.beta << 1.0, -1.0, 0.5;
    spec.gamma = {};
    spec.drift = Eigen::VectorXd(3);
    spec.drift << 0.1, 0.1, 0.0;
    return sim::simulate(spec);
}

} // namespace

int main() {
    Harness h;
    const Dataset surrogate22 =
        restrict_sample(sim::make_surrogate_panel(), std::nullopt, 2017);

    h.criterion(1, "trace statistics reproduce the published ladder", [&](auto& out) {
        const auto tr = trace_statistics(table3_eigenvalues(), 22);
        const double want[5] = {155.0606, 89.5652, 43.3632, 15.7233, 3.5365};
        for (int r = 0; r < 5; ++r) {
            expect_near(out, tr[static_cast<std::size_t>(r)], want[r], 0.01,
                        "trace(" + std::to_string(r) + ")");
        }
    });

    h.criterion(2, "log-likelihood ladder matches the published column", [&](auto& out) {
        const auto lam = table3_eigenvalues();
        const double want[5] = {162.46468, 185.56569, 199.38562, 205.47901, 207.24726};
        double ll = 129.71697;
        for (int r = 1; r <= 5; ++r) {
            ll -= 0.5 * 22 * std::log1p(-lam(r - 1));
            expect_near(out, ll, want[r - 1], 0.02, "LL(" + std::to_string(r) + ")");
        }
    });

    h.criterion(3, "rank selection at the 5% critical values returns 4", [&](auto& out) {
        const auto tr = trace_statistics(table3_eigenvalues(), 22);
        const int rank = select_rank(tr, {68.52, 47.21, 29.68, 15.41, 3.76});
        expect(out, rank == 4, "selected rank " + std::to_string(rank));
    });

    h.criterion(4, "parameter counts for K=5, p=3 match the published table", [&](auto& out) {
        const auto table = rank_table(surrogate22, 3);
        const int want[6] = {55, 64, 71, 76, 79, 80};
        for (int r = 0; r <= 5; ++r) {
            expect(out, table.rows[static_cast<std::size_t>(r)].parms == want[r],
                   "parms(" + std::to_string(r) + ") = " +
                       std::to_string(table.rows[static_cast<std::size_t>(r)].parms));
        }
    });

    h.criterion(5, "chi-square tails reproduce the published p-values", [&](auto& out) {
        expect_near(out, stats::chi2_sf(15.5313, 25), 0.92807, 5e-5, "sf(15.5313)");
        expect_near(out, stats::chi2_sf(33.6174, 25), 0.11634, 5e-5, "sf(33.6174)");
        expect_near(out, stats::chi2_sf(51.8166, 25), 0.00126, 5e-5, "sf(51.8166)");
    });

    h.criterion(6, "degrees-of-freedom conventions across the diagnostics", [&](auto& out) {
        const auto m1 = fit_vecm(surrogate22, 3, 1);
        const auto m4 = fit_vecm(surrogate22, 3, 4);

        const auto lm = lm_autocorr(fit_vecm(surrogate22, 1, 1), 2);
        for (const auto& row : lm) expect(out, row.df == 25, "LM df");

        const auto jb = normality_test(m4);
        for (std::size_t i = 0; i + 1 < jb.size(); ++i) {
            expect(out, jb[i].df == 2, "JB equation df");
        }
        expect(out, jb.back().df == 10, "JB joint df");

        expect(out, companion_matrix(m4).rows() == 15, "companion dimension");
        const auto st4 = stability_check(m4);
        expect(out, st4.imposed_unit_moduli == 1, "K - r = 1 imposed at rank 4");
        const auto st1 = stability_check(m1);
        expect(out, st1.imposed_unit_moduli == 4,
               "4 imposed unit moduli at rank 1 (published footer)");
    });

    h.criterion(7, "Phillips-Perron size and power at T=500", [&](auto& out) {
        int rejections = 0;
        const int reps = 500;
        for (int seed = 0; seed < reps; ++seed) {
            const auto s = single_series(sim::ProcessKind::random_walk, 500,
                                         static_cast<std::uint64_t>(40000 + seed));
            if (pp_test(s).decision == UnitRootDecision::reject_unit_root) ++rejections;
        }
        const double size = rejections / static_cast<double>(reps);
        out << " size=" << size;
        expect(out, size >= 0.03 && size <= 0.08, "empirical size in [0.03, 0.08]");

        int power_hits = 0;
        const int power_reps = 200;
        for (int seed = 0; seed < power_reps; ++seed) {
            const auto s = ar1_series(0.5, 500, static_cast<std::uint64_t>(50000 + seed));
            if (pp_test(s).decision == UnitRootDecision::reject_unit_root) ++power_hits;
        }
        const double power = power_hits / static_cast<double>(power_reps);
        out << " power=" << power;
        expect(out, power >= 0.95, "power against AR(0.5) >= 0.95");
    });

    h.criterion(8, "rank and direction recovery on simulated VECM panels", [&](auto& out) {
        int rank_hits = 0;
        int beta_hits = 0;
        const Eigen::Vector3d truth(1.0, -1.0, 0.5);
        for (int seed = 0; seed < 100; ++seed) {
            const auto d = rank1_panel(1000, static_cast<std::uint64_t>(60000 + seed));
            const auto table = rank_table(d, 2);
            if (table.selected_rank == 1) ++rank_hits;
            const auto m = fit_vecm(d, 2, 1);
            Eigen::Vector3d b = m.beta.col(0);
            const double cosang = std::abs(b.dot(truth)) / (b.norm() * truth.norm());
            const double deg = std::acos(std::min(1.0, cosang)) * 180.0 / M_PI;
            if (deg < 5.0) ++beta_hits;
        }
        out << " rank=" << rank_hits << "/100 beta=" << beta_hits << "/100";
        expect(out, rank_hits >= 85, "rank recovery >= 85/100");
        expect(out, beta_hits >= 90, "beta direction >= 90/100");
    });

    h.criterion(9, "structural invariants of the fitted system", [&](auto& out) {
        // K - r companion eigenvalues within 1e-6 of one
        for (int r : {1, 2}) {
            const auto d = rank1_panel(300, 321);
            const auto m = fit_vecm(d, 2, r);
            Eigen::EigenSolver<Eigen::MatrixXd> es(companion_matrix(m));
            int units = 0;
            for (int i = 0; i < es.eigenvalues().size(); ++i) {
                if (std::abs(std::abs(es.eigenvalues()(i)) - 1.0) < 1e-6) ++units;
            }
            expect(out, units >= 3 - r,
                   "unit roots at rank " + std::to_string(r) + ": " + std::to_string(units));
        }

        // full-rank fit equals the unrestricted level VAR
        const auto d = rank1_panel(300, 322);
        const auto full = fit_vecm(d, 2, 3);
        const auto var = fit_var(d, 2);
        const double resid_gap = (full.residuals - var.residuals).cwiseAbs().maxCoeff();
        out << " resid_gap=" << resid_gap;
        expect(out, resid_gap < 1e-8, "r = K residuals equal the level VAR");

        // likelihood-ratio identity on the surrogate
        const auto table = rank_table(surrogate22, 3);
        const double lr =
            2.0 * (table.rows[5].log_likelihood - table.rows[0].log_likelihood);
        expect_near(out, lr, *table.rows[0].trace_statistic, 1e-8,
                    "2 (LL(K) - LL(0)) = trace(0)");
    });

    h.criterion(10, "desk-scale rendering and causality fixtures", [&](auto& out) {
        // Table 1's statistics are not recomputable (the underlying panel is
        // unpublished); the layout is covered from stored values.
        IntegrationVerdict inf;
        inf.variable = "INF";
        inf.order = IntegrationOrder::I1;
        inf.level_result.z_t = -8.156;
        inf.diff_result.z_t = -22.416;
        inf.diff_result.significance_stars = 3;
        const std::string t1 = render_unitroot_table({inf});
        expect(out, t1.find("INF") != std::string::npos &&
                        t1.find("-22.4160***") != std::string::npos,
               "unit root row layout");

        // Table 4's coefficients are likewise fixtures: a hand-built rank-1
        // model with the published ROA column drives the causality readout.
        VecmModel m;
        m.K = 5;
        m.p = 3;
        m.r = 1;
        m.variable_names = {"ROA", "EXCH", "INF", "MSS", "UPY"};
        m.sample_T = 22;
        const int nreg = 1 + 10 + 1;
        m.coefficients = Eigen::MatrixXd::Zero(nreg, 5);
        m.standard_errors = Eigen::MatrixXd::Ones(nreg, 5);
        m.regressor_labels = {"ECM",
                              "ROA_{t-1}", "EXCH_{t-1}", "INF_{t-1}", "MSS_{t-1}", "UPY_{t-1}",
                              "ROA_{t-2}", "EXCH_{t-2}", "INF_{t-2}", "MSS_{t-2}", "UPY_{t-2}",
                              "const"};
        struct Entry { int row; double est; double z; };
        // published ROA column: ECM***, ROA(-1)***, INF lags***, MSS(-1)**,
        // UPY(-1)*, everything else insignificant
        const std::vector<Entry> entries{
            {0, -0.18560, 5.0}, {1, -0.69831, 5.0}, {6, -0.12437, 0.5},
            {2, 11.57623, 0.5}, {7, 23.49526, 0.5}, {3, -2.34515, 5.0},
            {8, -1.37211, 5.0}, {4, 2.40742, 2.2},  {9, 0.10168, 0.5},
            {5, 1.60029, 1.8},  {10, 3.44158, 0.5},
        };
        for (const auto& e : entries) {
            m.coefficients(e.row, 0) = e.est;
            m.standard_errors(e.row, 0) = std::abs(e.est) / e.z;
        }
        m.z_stats = Eigen::MatrixXd::Zero(nreg, 5);
        m.p_values = Eigen::MatrixXd::Ones(nreg, 5);
        for (int i = 0; i < nreg; ++i) {
            for (int e = 0; e < 5; ++e) {
                m.z_stats(i, e) = m.coefficients(i, e) / m.standard_errors(i, e);
                m.p_values(i, e) = stats::normal_pvalue(m.z_stats(i, e));
            }
        }

        const auto rows = coefficient_table(m, "ROA");
        expect(out, rows[0].label == "ECM", "ECM row first");
        const std::string t4 = render_coefficient_table(rows);
        expect(out, t4.find("-0.18560***") != std::string::npos, "ECM star rendering");

        const auto summary = causality_summary(m, 0.10);
        const auto& roa = summary.equations[0];
        expect(out, roa.long_run, "long-run causality present for ROA");
        expect_near(out, roa.adjustment_speed_pct, 18.0, 0.0, "adjustment speed 18%");
        const std::vector<std::string> sources{"ROA", "INF", "MSS", "UPY"};
        expect(out, roa.short_run_sources == sources,
               "short-run sources are ROA, INF, MSS, UPY (not EXCH)");
        const auto& inf_eq = summary.equations[2];
        expect(out, !inf_eq.long_run && inf_eq.short_run_sources.empty(),
               "nothing significant in the INF equation");
    });

    if (h.failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", h.failures);
    return 1;
}
