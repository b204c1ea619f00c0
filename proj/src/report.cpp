#include "vecmkit/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace vecmkit {

namespace {

using nlohmann::json;

std::string fixed(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
    return buf;
}

std::string sci(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*e", prec, v);
    return buf;
}

std::string stars(int n) { return std::string(static_cast<std::size_t>(n), '*'); }

// Left-justified first column, right-justified numeric columns, two-space
// gutters.
std::string layout(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return "";
    std::size_t ncol = 0;
    for (const auto& r : rows) ncol = std::max(ncol, r.size());
    std::vector<std::size_t> width(ncol, 0);
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            width[c] = std::max(width[c], r[c].size());
        }
    }
    std::ostringstream out;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t c = 0; c < r.size(); ++c) {
            std::string cell = r[c];
            if (c == 0) {
                cell += std::string(width[c] - cell.size(), ' ');
            } else {
                cell = std::string(width[c] - cell.size(), ' ') + cell;
            }
            if (c > 0) line += "  ";
            line += cell;
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    }
    return out.str();
}

const char* kStarsNote =
    "Note: ***, **, * denote statistical significance at the 1%, 5%, and 10% level.";

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    Eigen::MatrixXd m(j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
    const auto& data = j.at("data");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            m(i, c) = data.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(c)).get<double>();
        }
    }
    return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Eigen::VectorXd vector_from_json(const json& j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j.at(i).get<double>();
    return v;
}

} // namespace

std::string render_unitroot_table(const std::vector<IntegrationVerdict>& verdicts) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Variable", "Level", "1st Diff", "Order"});
    for (const auto& v : verdicts) {
        rows.push_back({v.variable,
                        fixed(v.level_result.z_t, 4) + stars(v.level_result.significance_stars),
                        fixed(v.diff_result.z_t, 4) + stars(v.diff_result.significance_stars),
                        to_string(v.order)});
    }
    std::ostringstream out;
    out << "Phillips-Perron Unit Root Test\n" << layout(rows) << kStarsNote << '\n';
    return out.str();
}

std::string render_lag_table(const LagTable& t) {
    auto starred = [&](LagCriterion c, int lag, const std::string& text) {
        return t.starred_minima.at(c) == lag ? text + "*" : text;
    };
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Lag", "df", "P", "FPE", "AIC", "HQIC", "SBIC"});
    for (const auto& r : t.rows) {
        rows.push_back({std::to_string(r.lag), std::to_string(r.df), fixed(r.p_value, 4),
                        starred(LagCriterion::fpe, r.lag, sci(r.fpe, 4)),
                        starred(LagCriterion::aic, r.lag, fixed(r.aic, 5)),
                        starred(LagCriterion::hqic, r.lag, fixed(r.hqic, 5)),
                        starred(LagCriterion::sbic, r.lag, fixed(r.sbic, 5))});
    }
    std::ostringstream out;
    out << "Lag Length Selection (common sample T = " << t.sample_T << ")\n" << layout(rows);
    return out.str();
}

std::string render_rank_table(const RankTestResult& t, const std::string& sample_label) {
    std::vector<std::vector<std::string>> rows;
    const std::string cv_head =
        t.cv_level == 0.01 ? "1% Critical Value" : "5% Critical Value";
    rows.push_back({"Maximum rank", "Parms", "LL", "Eigenvalue", "Trace Statistic", cv_head});
    for (const auto& r : t.rows) {
        std::string trace_cell;
        if (r.trace_statistic) {
            trace_cell = fixed(*r.trace_statistic, 4);
            if (r.rank == t.selected_rank) trace_cell += " \xc2\xb1"; // ± marks the selection
        }
        rows.push_back({std::to_string(r.rank), std::to_string(r.parms),
                        fixed(r.log_likelihood, 5),
                        r.eigenvalue ? fixed(*r.eigenvalue, 5) : "",
                        trace_cell,
                        r.critical_value ? fixed(*r.critical_value, 2) : ""});
    }
    std::ostringstream out;
    out << "Johansen tests for cointegration\n";
    out << "Trend: " << to_string(t.trend);
    if (!sample_label.empty()) out << "   Sample: " << sample_label;
    out << "   Number of obs = " << t.sample_T << "   Lags = " << t.lags << '\n';
    out << layout(rows);
    out << "Selected rank: " << t.selected_rank << '\n';
    return out.str();
}

std::string render_coefficient_table(const std::vector<CoefficientRow>& rows) {
    std::vector<std::vector<std::string>> table;
    table.push_back({"Regressor", "Coefficient", "Std. Err.", "z", "P>|z|"});
    for (const auto& r : rows) {
        table.push_back({r.label, fixed(r.estimate, 5) + stars(r.stars),
                         fixed(r.standard_error, 5), fixed(r.z, 4), fixed(r.p_value, 5)});
    }
    return layout(table);
}

std::string render_vecm_tables(const VecmModel& m) {
    std::ostringstream out;
    out << "Vector error correction model: K = " << m.K << ", lags = " << m.p
        << ", rank = " << m.r << ", trend = " << to_string(m.trend)
        << ", T = " << m.sample_T << '\n';
    for (const auto& name : m.variable_names) {
        out << "\nDependent variable: D_" << name << '\n';
        out << render_coefficient_table(coefficient_table(m, name));
    }
    out << kStarsNote << '\n';
    return out.str();
}

std::string render_lm_table(const std::vector<LmRow>& rows) {
    std::vector<std::vector<std::string>> table;
    table.push_back({"Lag", "chi2", "df", "Prob > chi2"});
    for (const auto& r : rows) {
        table.push_back({std::to_string(r.lag), fixed(r.chi2, 4), std::to_string(r.df),
                         fixed(r.p_value, 5)});
    }
    std::ostringstream out;
    out << "Lagrange-multiplier test\n" << layout(table)
        << "H0: no autocorrelation at lag order\n";
    return out.str();
}

std::string render_normality_table(const std::vector<NormalityRow>& rows) {
    std::vector<std::vector<std::string>> table;
    table.push_back({"Equation", "chi2", "df", "Prob > chi2"});
    for (const auto& r : rows) {
        const std::string name = r.equation == "ALL" ? r.equation : "D_" + r.equation;
        table.push_back({name, fixed(r.chi2, 4), std::to_string(r.df), fixed(r.p_value, 5)});
    }
    std::ostringstream out;
    out << "Jarque-Bera test\n" << layout(table);
    return out.str();
}

std::string render_stability_table(const StabilityReport& r) {
    std::vector<std::vector<std::string>> table;
    table.push_back({"Eigenvalue", "Modulus"});
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        const auto& e = r.eigenvalues[i];
        std::string cell = fixed(e.real(), 6);
        if (std::abs(e.imag()) > 1e-12) {
            cell += (e.imag() >= 0.0 ? " + " : " - ") + fixed(std::abs(e.imag()), 6) + "i";
        }
        table.push_back({cell, fixed(r.moduli[i], 6)});
    }
    std::ostringstream out;
    out << "Eigenvalue stability condition\n" << layout(table);
    out << "The VECM specification imposes " << r.imposed_unit_moduli << " unit moduli.\n";
    out << "Stable: " << (r.stable ? "yes" : "no")
        << " (every non-imposed modulus must be below one)\n";
    return out.str();
}

std::string render_narrative(const CausalitySummary& s) {
    std::ostringstream out;
    out << "Causality readout (mechanical, " << fixed(s.level * 100.0, 0)
        << "% significance):\n";
    for (const auto& eq : s.equations) {
        out << "- " << eq.equation << ": ";
        if (eq.long_run) {
            std::string others;
            for (const auto& other : s.equations) {
                if (other.equation == eq.equation) continue;
                if (!others.empty()) others += ", ";
                others += other.equation;
            }
            out << "long-run causality running from " << others << " to " << eq.equation
                << "; disequilibrium corrected at a speed of "
                << fixed(eq.adjustment_speed_pct, 0) << "% per period.";
        } else {
            out << "no long-run causality.";
        }
        if (!eq.short_run_sources.empty()) {
            std::string src;
            for (const auto& v : eq.short_run_sources) {
                if (!src.empty()) src += ", ";
                src += v;
            }
            out << " Short-run causality running from " << src << ".";
        } else {
            out << " No short-run causality.";
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

void to_json(json& j, const PpResult& r) {
    j = json{{"variable", r.variable},
             {"deterministic", to_string(r.deterministic)},
             {"bandwidth", r.bandwidth},
             {"z_t", r.z_t},
             {"critical_values",
              {{"1%", r.critical_values[0]}, {"5%", r.critical_values[1]}, {"10%", r.critical_values[2]}}},
             {"decision", r.decision == UnitRootDecision::reject_unit_root
                              ? "reject_unit_root"
                              : "fail_to_reject"},
             {"stars", r.significance_stars},
             {"level", r.level},
             {"sample_T", r.sample_T}};
}

void from_json(const json& j, PpResult& r) {
    r.variable = j.at("variable").get<std::string>();
    r.deterministic = parse_deterministic(j.at("deterministic").get<std::string>());
    r.bandwidth = j.at("bandwidth").get<int>();
    r.z_t = j.at("z_t").get<double>();
    r.critical_values = {j.at("critical_values").at("1%").get<double>(),
                         j.at("critical_values").at("5%").get<double>(),
                         j.at("critical_values").at("10%").get<double>()};
    r.decision = j.at("decision").get<std::string>() == "reject_unit_root"
                     ? UnitRootDecision::reject_unit_root
                     : UnitRootDecision::fail_to_reject;
    r.significance_stars = j.at("stars").get<int>();
    r.level = j.at("level").get<double>();
    r.sample_T = j.at("sample_T").get<int>();
}

void to_json(json& j, const IntegrationVerdict& v) {
    j = json{{"variable", v.variable},
             {"order", to_string(v.order)},
             {"level_result", v.level_result},
             {"diff_result", v.diff_result}};
}

void from_json(const json& j, IntegrationVerdict& v) {
    v.variable = j.at("variable").get<std::string>();
    const auto o = j.at("order").get<std::string>();
    v.order = o == "I(0)" ? IntegrationOrder::I0
                          : o == "I(1)" ? IntegrationOrder::I1 : IntegrationOrder::higher;
    j.at("level_result").get_to(v.level_result);
    j.at("diff_result").get_to(v.diff_result);
}

void to_json(json& j, const LagRow& r) {
    j = json{{"lag", r.lag},          {"log_likelihood", r.log_likelihood},
             {"lr_statistic", r.lr_statistic}, {"df", r.df},
             {"p_value", r.p_value},  {"fpe", r.fpe},
             {"aic", r.aic},          {"hqic", r.hqic},
             {"sbic", r.sbic}};
}

void from_json(const json& j, LagRow& r) {
    j.at("lag").get_to(r.lag);
    j.at("log_likelihood").get_to(r.log_likelihood);
    j.at("lr_statistic").get_to(r.lr_statistic);
    j.at("df").get_to(r.df);
    j.at("p_value").get_to(r.p_value);
    j.at("fpe").get_to(r.fpe);
    j.at("aic").get_to(r.aic);
    j.at("hqic").get_to(r.hqic);
    j.at("sbic").get_to(r.sbic);
}

void to_json(json& j, const LagTable& t) {
    json starred = json::object();
    for (const auto& [crit, lag] : t.starred_minima) starred[to_string(crit)] = lag;
    j = json{{"rows", t.rows}, {"starred_minima", std::move(starred)},
             {"K", t.K}, {"sample_T", t.sample_T}};
}

void from_json(const json& j, LagTable& t) {
    j.at("rows").get_to(t.rows);
    t.starred_minima.clear();
    const auto& starred = j.at("starred_minima");
    for (auto it = starred.begin(); it != starred.end(); ++it) {
        LagCriterion c;
        if (it.key() == "FPE") c = LagCriterion::fpe;
        else if (it.key() == "AIC") c = LagCriterion::aic;
        else if (it.key() == "HQIC") c = LagCriterion::hqic;
        else if (it.key() == "SBIC") c = LagCriterion::sbic;
        else throw Error("unknown criterion '" + it.key() + "' in lag table JSON");
        t.starred_minima[c] = it.value().get<int>();
    }
    j.at("K").get_to(t.K);
    j.at("sample_T").get_to(t.sample_T);
}

void to_json(json& j, const RankRow& r) {
    j = json{{"rank", r.rank}, {"parms", r.parms}, {"log_likelihood", r.log_likelihood}};
    if (r.eigenvalue) j["eigenvalue"] = *r.eigenvalue;
    if (r.trace_statistic) j["trace_statistic"] = *r.trace_statistic;
    if (r.critical_value) j["critical_value"] = *r.critical_value;
}

void from_json(const json& j, RankRow& r) {
    j.at("rank").get_to(r.rank);
    j.at("parms").get_to(r.parms);
    j.at("log_likelihood").get_to(r.log_likelihood);
    r.eigenvalue = j.contains("eigenvalue") ? std::optional<double>(j.at("eigenvalue").get<double>())
                                            : std::nullopt;
    r.trace_statistic = j.contains("trace_statistic")
                            ? std::optional<double>(j.at("trace_statistic").get<double>())
                            : std::nullopt;
    r.critical_value = j.contains("critical_value")
                           ? std::optional<double>(j.at("critical_value").get<double>())
                           : std::nullopt;
}

void to_json(json& j, const RankTestResult& t) {
    j = json{{"rows", t.rows},     {"selected_rank", t.selected_rank},
             {"K", t.K},           {"lags", t.lags},
             {"sample_T", t.sample_T}, {"trend", to_string(t.trend)},
             {"cv_level", t.cv_level}};
}

void from_json(const json& j, RankTestResult& t) {
    j.at("rows").get_to(t.rows);
    j.at("selected_rank").get_to(t.selected_rank);
    j.at("K").get_to(t.K);
    j.at("lags").get_to(t.lags);
    j.at("sample_T").get_to(t.sample_T);
    t.trend = parse_trend(j.at("trend").get<std::string>());
    j.at("cv_level").get_to(t.cv_level);
}

void to_json(json& j, const CoefficientRow& r) {
    j = json{{"equation", r.equation}, {"label", r.label},
             {"estimate", r.estimate}, {"standard_error", r.standard_error},
             {"z", r.z},               {"p_value", r.p_value},
             {"stars", r.stars}};
}

void from_json(const json& j, CoefficientRow& r) {
    j.at("equation").get_to(r.equation);
    j.at("label").get_to(r.label);
    j.at("estimate").get_to(r.estimate);
    j.at("standard_error").get_to(r.standard_error);
    j.at("z").get_to(r.z);
    j.at("p_value").get_to(r.p_value);
    j.at("stars").get_to(r.stars);
}

void to_json(json& j, const VecmModel& m) {
    std::vector<json> gammas;
    for (const auto& g : m.gamma) gammas.push_back(matrix_to_json(g));
    j = json{{"K", m.K},
             {"p", m.p},
             {"r", m.r},
             {"trend", to_string(m.trend)},
             {"variable_names", m.variable_names},
             {"alpha", matrix_to_json(m.alpha)},
             {"beta", matrix_to_json(m.beta)},
             {"gamma", gammas},
             {"intercepts", vector_to_json(m.intercepts)},
             {"coefficients", matrix_to_json(m.coefficients)},
             {"standard_errors", matrix_to_json(m.standard_errors)},
             {"z_stats", matrix_to_json(m.z_stats)},
             {"p_values", matrix_to_json(m.p_values)},
             {"regressor_labels", m.regressor_labels},
             {"residuals", matrix_to_json(m.residuals)},
             {"residual_covariance", matrix_to_json(m.residual_covariance)},
             {"log_likelihood", m.log_likelihood},
             {"sample_T", m.sample_T},
             {"regressors", matrix_to_json(m.regressors)},
             {"levels", matrix_to_json(m.levels)},
             {"periods", m.periods},
             {"pivoted_normalization", m.pivoted_normalization}};
}

void from_json(const json& j, VecmModel& m) {
    j.at("K").get_to(m.K);
    j.at("p").get_to(m.p);
    j.at("r").get_to(m.r);
    m.trend = parse_trend(j.at("trend").get<std::string>());
    j.at("variable_names").get_to(m.variable_names);
    m.alpha = matrix_from_json(j.at("alpha"));
    m.beta = matrix_from_json(j.at("beta"));
    m.gamma.clear();
    for (const auto& g : j.at("gamma")) m.gamma.push_back(matrix_from_json(g));
    m.intercepts = vector_from_json(j.at("intercepts"));
    m.coefficients = matrix_from_json(j.at("coefficients"));
    m.standard_errors = matrix_from_json(j.at("standard_errors"));
    m.z_stats = matrix_from_json(j.at("z_stats"));
    m.p_values = matrix_from_json(j.at("p_values"));
    j.at("regressor_labels").get_to(m.regressor_labels);
    m.residuals = matrix_from_json(j.at("residuals"));
    m.residual_covariance = matrix_from_json(j.at("residual_covariance"));
    j.at("log_likelihood").get_to(m.log_likelihood);
    j.at("sample_T").get_to(m.sample_T);
    m.regressors = matrix_from_json(j.at("regressors"));
    m.levels = matrix_from_json(j.at("levels"));
    j.at("periods").get_to(m.periods);
    j.at("pivoted_normalization").get_to(m.pivoted_normalization);
}

void to_json(json& j, const LmRow& r) {
    j = json{{"lag", r.lag}, {"chi2", r.chi2}, {"df", r.df}, {"p_value", r.p_value}};
}

void from_json(const json& j, LmRow& r) {
    j.at("lag").get_to(r.lag);
    j.at("chi2").get_to(r.chi2);
    j.at("df").get_to(r.df);
    j.at("p_value").get_to(r.p_value);
}

void to_json(json& j, const NormalityRow& r) {
    j = json{{"equation", r.equation}, {"chi2", r.chi2}, {"df", r.df}, {"p_value", r.p_value}};
}

void from_json(const json& j, NormalityRow& r) {
    j.at("equation").get_to(r.equation);
    j.at("chi2").get_to(r.chi2);
    j.at("df").get_to(r.df);
    j.at("p_value").get_to(r.p_value);
}

void to_json(json& j, const StabilityReport& r) {
    json eig = json::array();
    for (const auto& e : r.eigenvalues) eig.push_back(json::array({e.real(), e.imag()}));
    j = json{{"eigenvalues", std::move(eig)},
             {"moduli", r.moduli},
             {"imposed_unit_moduli", r.imposed_unit_moduli},
             {"stable", r.stable}};
}

void from_json(const json& j, StabilityReport& r) {
    r.eigenvalues.clear();
    for (const auto& e : j.at("eigenvalues")) {
        r.eigenvalues.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    }
    j.at("moduli").get_to(r.moduli);
    j.at("imposed_unit_moduli").get_to(r.imposed_unit_moduli);
    j.at("stable").get_to(r.stable);
}

void to_json(json& j, const EquationCausality& c) {
    j = json{{"equation", c.equation},
             {"long_run", c.long_run},
             {"adjustment_speed_pct", c.adjustment_speed_pct},
             {"short_run_sources", c.short_run_sources}};
}

void from_json(const json& j, EquationCausality& c) {
    j.at("equation").get_to(c.equation);
    j.at("long_run").get_to(c.long_run);
    j.at("adjustment_speed_pct").get_to(c.adjustment_speed_pct);
    j.at("short_run_sources").get_to(c.short_run_sources);
}

void to_json(json& j, const CausalitySummary& s) {
    j = json{{"level", s.level}, {"equations", s.equations}};
}

void from_json(const json& j, CausalitySummary& s) {
    j.at("level").get_to(s.level);
    j.at("equations").get_to(s.equations);
}

} // namespace vecmkit
