#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "vecmkit/pipeline.hpp"
#include "vecmkit/simulate.hpp"

using nlohmann::json;
using namespace vecmkit;

namespace {

struct InputOptions {
    std::string path;
    std::string date_column = "year";
    std::string vars;
    std::optional<int> sample_start;
    std::optional<int> sample_end;
};

struct OutputOptions {
    std::string format = "text";
    std::string output; // empty = stdout
};

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--input", in.path, "input CSV file")->required();
    cmd->add_option("--date-column", in.date_column, "name of the period column");
    cmd->add_option("--vars", in.vars, "comma-separated variable subset, in order");
    cmd->add_option("--sample-start", in.sample_start, "first period to keep");
    cmd->add_option("--sample-end", in.sample_end, "last period to keep");
}

void add_output_options(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--output", out.output,
                    "write the report to this file (relative paths resolve under "
                    "$VECMKIT_OUTPUT_DIR); default stdout");
}

Dataset load_input(const InputOptions& in) {
    auto loaded = load_csv(in.path, in.date_column);
    if (!loaded.incomplete_rows.empty()) {
        std::cerr << "warning: dropped rows with empty cells:";
        for (const auto& [row, period] : loaded.incomplete_rows) {
            std::cerr << " period " << period << " (row " << row << ")";
        }
        std::cerr << '\n';
    }
    Dataset d = select_variables(loaded.dataset, split_list(in.vars));
    if (in.sample_start || in.sample_end) {
        d = restrict_sample(d, in.sample_start, in.sample_end);
    }
    return d;
}

void emit(const OutputOptions& opts, const std::string& content) {
    if (opts.output.empty()) {
        std::cout << content;
        return;
    }
    std::filesystem::path target(opts.output);
    if (target.is_relative()) {
        if (const char* dir = std::getenv("VECMKIT_OUTPUT_DIR")) {
            target = std::filesystem::path(dir) / target;
        }
    }
    std::ofstream out(target);
    if (!out) throw Error("cannot open output file: " + target.string());
    out << content;
    std::cerr << "wrote " << target.string() << '\n';
}

std::string wrap_json(const char* schema, json body) {
    json j{{"schema", schema}, {"result", std::move(body)}};
    return j.dump(2) + "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vecmkit - unit roots, cointegration rank, VECM estimation and diagnostics"};
    app.require_subcommand(1);

    // --- unitroot -----------------------------------------------------------
    InputOptions ur_in;
    OutputOptions ur_out;
    std::string ur_det = "constant";
    std::optional<int> ur_bw;
    double ur_level = 0.05;
    int ur_maxd = 2;
    auto* ur = app.add_subcommand("unitroot", "Phillips-Perron tests and integration orders");
    add_input_options(ur, ur_in);
    add_output_options(ur, ur_out);
    ur->add_option("--deterministic", ur_det, "none|constant|trend");
    ur->add_option("--bandwidth", ur_bw, "Bartlett bandwidth (default floor(4(T/100)^{2/9}))");
    ur->add_option("--level", ur_level, "significance level")->check(CLI::IsMember({0.01, 0.05, 0.10}));
    ur->add_option("--max-d", ur_maxd, "maximum differencing order to try");

    // --- lagselect ----------------------------------------------------------
    InputOptions ls_in;
    OutputOptions ls_out;
    int ls_pmax = 4;
    std::string ls_rule = "majority";
    auto* ls = app.add_subcommand("lagselect", "information-criterion lag order table");
    add_input_options(ls, ls_in);
    add_output_options(ls, ls_out);
    ls->add_option("--pmax", ls_pmax, "largest candidate lag");
    ls->add_option("--rule", ls_rule, "majority|aic|sbic|hqic|fpe");

    // --- vecrank ------------------------------------------------------------
    InputOptions vr_in;
    OutputOptions vr_out;
    int vr_lags = 2;
    std::string vr_trend = "constant";
    double vr_level = 0.05;
    auto* vr = app.add_subcommand("vecrank", "Johansen trace tests for cointegration rank");
    add_input_options(vr, vr_in);
    add_output_options(vr, vr_out);
    vr->add_option("--lags", vr_lags, "lag order of the underlying VAR");
    vr->add_option("--trend", vr_trend, "deterministic case (constant)");
    vr->add_option("--level", vr_level, "critical value level (0.05 or 0.01)")
        ->check(CLI::IsMember({0.01, 0.05}));

    // --- vecm fit -----------------------------------------------------------
    InputOptions vf_in;
    OutputOptions vf_out;
    int vf_lags = 2;
    int vf_rank = 1;
    std::string vf_trend = "constant";
    auto* vecm_cmd = app.add_subcommand("vecm", "vector error correction model");
    vecm_cmd->require_subcommand(1);
    auto* vf = vecm_cmd->add_subcommand("fit", "estimate the VECM and print coefficient tables");
    add_input_options(vf, vf_in);
    add_output_options(vf, vf_out);
    vf->add_option("--lags", vf_lags, "lag order in levels");
    vf->add_option("--rank", vf_rank, "cointegrating rank");
    vf->add_option("--trend", vf_trend, "deterministic case");

    // --- diag ---------------------------------------------------------------
    InputOptions dg_in;
    OutputOptions dg_out;
    int dg_lags = 2;
    int dg_rank = 1;
    std::string dg_trend = "constant";
    int dg_mlag = 3;
    double dg_tol = 1e-6;
    auto* dg = app.add_subcommand("diag", "post-estimation diagnostics");
    dg->require_subcommand(1);
    auto* dg_lm = dg->add_subcommand("lm", "Lagrange-multiplier autocorrelation test");
    auto* dg_nm = dg->add_subcommand("normality", "Jarque-Bera normality test");
    auto* dg_st = dg->add_subcommand("stability", "companion-matrix eigenvalue condition");
    for (auto* sub : {dg_lm, dg_nm, dg_st}) {
        add_input_options(sub, dg_in);
        add_output_options(sub, dg_out);
        sub->add_option("--lags", dg_lags, "lag order in levels");
        sub->add_option("--rank", dg_rank, "cointegrating rank");
        sub->add_option("--trend", dg_trend, "deterministic case");
    }
    dg_lm->add_option("--mlag", dg_mlag, "test lags 1..mlag");
    dg_st->add_option("--tolerance", dg_tol, "unit-modulus tolerance");

    // --- simulate -----------------------------------------------------------
    OutputOptions sim_out;
    std::uint64_t sim_seed = sim::kSurrogateSeed;
    std::string sim_spec_path;
    std::string sim_csv = "nigeria_surrogate.csv";
    auto* sim = app.add_subcommand("simulate", "synthetic data generators");
    sim->require_subcommand(1);
    auto* sim_sur = sim->add_subcommand("surrogate", "write the bundled surrogate panel");
    sim_sur->add_option("--seed", sim_seed, "generator seed");
    sim_sur->add_option("--output", sim_csv, "output CSV path");
    auto* sim_proc = sim->add_subcommand("process", "simulate a process from a JSON spec");
    sim_proc->add_option("--spec", sim_spec_path, "JSON ProcessSpec file")->required();
    sim_proc->add_option("--output", sim_csv, "output CSV path")->required();

    // --- pipeline -----------------------------------------------------------
    PipelineConfig pc;
    OutputOptions pl_out;
    std::string pl_vars, pl_transforms, pl_trend = "constant", pl_format = "text";
    std::optional<int> pl_lags, pl_rank, pl_start, pl_end;
    auto* pl = app.add_subcommand("pipeline", "run the whole study end to end");
    pl->add_option("--input", pc.input_path, "input CSV file")->required();
    pl->add_option("--date-column", pc.date_column, "name of the period column");
    pl->add_option("--vars", pl_vars, "comma-separated variable subset, in order");
    pl->add_option("--transforms", pl_transforms,
                   "per-variable transforms (level|diff|log|logdiff), comma-separated");
    pl->add_option("--pmax", pc.pmax, "largest candidate lag");
    pl->add_option("--lags", pl_lags, "override the selected lag order");
    pl->add_option("--rank", pl_rank, "override the selected cointegrating rank");
    pl->add_option("--trend", pl_trend, "deterministic case");
    pl->add_option("--level", pc.level, "significance level")
        ->check(CLI::IsMember({0.01, 0.05, 0.10}));
    pl->add_option("--seed", pc.seed, "seed for simulation-backed runs");
    pl->add_option("--sample-start", pl_start, "first period to keep");
    pl->add_option("--sample-end", pl_end, "last period to keep");
    pl->add_option("--format", pl_format, "text or json")->check(CLI::IsMember({"text", "json"}));
    pl->add_option("--output", pl_out.output, "write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ur->parsed()) {
            const Dataset d = load_input(ur_in);
            std::vector<IntegrationVerdict> verdicts;
            for (const auto& s : d.series()) {
                verdicts.push_back(classify_integration(s, ur_maxd, ur_level,
                                                        parse_deterministic(ur_det)));
            }
            emit(ur_out, ur_out.format == "json"
                             ? wrap_json("vecmkit.unitroot.v1", json(verdicts))
                             : render_unitroot_table(verdicts));
        } else if (ls->parsed()) {
            const Dataset d = load_input(ls_in);
            const auto table = lag_order_table(d, ls_pmax);
            const int chosen = select_lag(table, parse_lag_rule(ls_rule));
            if (ls_out.format == "json") {
                json j(table);
                j["selected_lag"] = chosen;
                j["rule"] = ls_rule;
                emit(ls_out, wrap_json("vecmkit.lagselect.v1", std::move(j)));
            } else {
                emit(ls_out, render_lag_table(table) + "Selected lag (" + ls_rule +
                                 " rule): " + std::to_string(chosen) + "\n");
            }
        } else if (vr->parsed()) {
            const Dataset d = load_input(vr_in);
            const auto table = rank_table(d, vr_lags, parse_trend(vr_trend), vr_level);
            const std::string label = std::to_string(d.periods()[static_cast<std::size_t>(vr_lags)]) +
                                      " - " + std::to_string(d.periods().back());
            emit(vr_out, vr_out.format == "json"
                             ? wrap_json("vecmkit.vecrank.v1", json(table))
                             : render_rank_table(table, label));
        } else if (vf->parsed()) {
            const Dataset d = load_input(vf_in);
            const auto model = fit_vecm(d, vf_lags, vf_rank, parse_trend(vf_trend));
            emit(vf_out, vf_out.format == "json" ? wrap_json("vecmkit.vecm.v1", json(model))
                                                 : render_vecm_tables(model));
        } else if (dg->parsed()) {
            const Dataset d = load_input(dg_in);
            const auto model = fit_vecm(d, dg_lags, dg_rank, parse_trend(dg_trend));
            if (dg_lm->parsed()) {
                const auto rows = lm_autocorr(model, dg_mlag);
                emit(dg_out, dg_out.format == "json" ? wrap_json("vecmkit.diag.lm.v1", json(rows))
                                                     : render_lm_table(rows));
            } else if (dg_nm->parsed()) {
                const auto rows = normality_test(model);
                emit(dg_out, dg_out.format == "json"
                                 ? wrap_json("vecmkit.diag.normality.v1", json(rows))
                                 : render_normality_table(rows));
            } else {
                const auto rep = stability_check(model, dg_tol);
                emit(dg_out, dg_out.format == "json"
                                 ? wrap_json("vecmkit.diag.stability.v1", json(rep))
                                 : render_stability_table(rep));
            }
        } else if (sim->parsed()) {
            if (sim_sur->parsed()) {
                const Dataset d = sim::make_surrogate_panel(sim_seed);
                write_csv(d, sim_csv);
                std::cerr << "wrote " << sim_csv << " (seed " << sim_seed << ")\n";
            } else {
                std::ifstream spec_in(sim_spec_path);
                if (!spec_in) throw InputError("cannot open spec file: " + sim_spec_path);
                json j = json::parse(spec_in);
                sim::ProcessSpec spec;
                spec.kind = sim::parse_process_kind(j.at("kind").get<std::string>());
                spec.K = j.value("K", 1);
                spec.T = j.at("T").get<int>();
                spec.seed = j.value("seed", std::uint64_t{0});
                spec.first_period = j.value("first_period", 1);
                if (j.contains("names")) j.at("names").get_to(spec.names);
                auto read_matrix = [](const json& mj) {
                    Eigen::MatrixXd m(mj.size(), mj.empty() ? 0 : mj.at(0).size());
                    for (std::size_t i = 0; i < mj.size(); ++i) {
                        for (std::size_t c = 0; c < mj.at(i).size(); ++c) {
                            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                                mj.at(i).at(c).get<double>();
                        }
                    }
                    return m;
                };
                if (j.contains("drift")) {
                    const auto& dj = j.at("drift");
                    spec.drift.resize(static_cast<Eigen::Index>(dj.size()));
                    for (std::size_t i = 0; i < dj.size(); ++i) {
                        spec.drift(static_cast<Eigen::Index>(i)) = dj.at(i).get<double>();
                    }
                }
                if (j.contains("var_coefficients")) {
                    for (const auto& mj : j.at("var_coefficients")) {
                        spec.var_coefficients.push_back(read_matrix(mj));
                    }
                }
                if (j.contains("alpha")) spec.alpha = read_matrix(j.at("alpha"));
                if (j.contains("beta")) spec.beta = read_matrix(j.at("beta"));
                if (j.contains("gamma")) {
                    for (const auto& mj : j.at("gamma")) spec.gamma.push_back(read_matrix(mj));
                }
                if (j.contains("innovation_covariance")) {
                    spec.innovation_covariance = read_matrix(j.at("innovation_covariance"));
                }
                write_csv(sim::simulate(spec), sim_csv);
                std::cerr << "wrote " << sim_csv << '\n';
            }
        } else if (pl->parsed()) {
            pc.variables = split_list(pl_vars);
            for (const auto& t : split_list(pl_transforms)) {
                pc.transforms.push_back(parse_transform(t));
            }
            pc.trend = parse_trend(pl_trend);
            pc.format = parse_format(pl_format);
            pc.lag_override = pl_lags;
            pc.rank_override = pl_rank;
            pc.sample_start = pl_start;
            pc.sample_end = pl_end;
            const auto report = run_pipeline(pc);
            pl_out.format = pl_format;
            emit(pl_out, pc.format == OutputFormat::json ? render_report_json(report)
                                                         : render_report_text(report));
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
