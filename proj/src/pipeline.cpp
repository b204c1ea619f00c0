#include "vecmkit/pipeline.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace vecmkit {

using nlohmann::json;

OutputFormat parse_format(const std::string& text) {
    if (text == "text") return OutputFormat::text;
    if (text == "json") return OutputFormat::json;
    throw InputError("unknown format '" + text + "' (expected text|json)");
}

void PipelineConfig::validate() const {
    if (input_path.empty()) throw InputError("no input path given");
    if (level != 0.01 && level != 0.05 && level != 0.10) {
        throw InputError("significance level must be 0.01, 0.05, or 0.10");
    }
    if (pmax < 1) throw InputError("pmax must be at least 1");
    if (lag_override && *lag_override < 1) throw InputError("lag override must be at least 1");
    if (rank_override && *rank_override < 0) throw InputError("rank override must be non-negative");
    if (!variables.empty() && !transforms.empty() && variables.size() != transforms.size()) {
        throw InputError("got " + std::to_string(transforms.size()) + " transforms for " +
                         std::to_string(variables.size()) + " variables");
    }
}

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const InputError& e) {
        throw InputError(std::string(name) + ": " + e.what());
    } catch (const Error& e) {
        throw Error(std::string(name) + ": " + e.what());
    }
}

} // namespace

StudyReport run_pipeline(const PipelineConfig& config) {
    config.validate();

    StudyReport report;
    report.config = config;

    const Dataset data = stage("dataset", [&] {
        auto loaded = load_csv(config.input_path, config.date_column);
        report.dropped_rows = loaded.incomplete_rows;
        Dataset d = select_variables(loaded.dataset, config.variables);
        if (config.sample_start || config.sample_end) {
            d = restrict_sample(d, config.sample_start, config.sample_end);
        }
        if (!config.transforms.empty()) {
            d = align(d, config.transforms);
        }
        return d;
    });
    report.sample_label = std::to_string(data.periods().front()) + " - " +
                          std::to_string(data.periods().back());

    stage("unitroot", [&] {
        for (const auto& s : data.series()) {
            report.unit_root.push_back(classify_integration(s, 2, config.level));
        }
        return 0;
    });

    report.lag_table = stage("lagselect", [&] {
        // Short panels cannot support the requested depth; clamp rather than
        // abort, and record the effective pmax in the table itself.
        const int feasible = max_feasible_lag(data.T(), data.K());
        if (feasible < 1) {
            throw Error("sample too short for any lag order");
        }
        return lag_order_table(data, std::min(config.pmax, feasible));
    });
    report.selected_lag = config.lag_override.value_or(select_lag(report.lag_table));

    report.rank_table = stage("johansen", [&] {
        const double cv_level = config.level == 0.01 ? 0.01 : 0.05;
        return rank_table(data, report.selected_lag, config.trend, cv_level);
    });
    report.selected_rank = config.rank_override.value_or(report.rank_table.selected_rank);

    report.model = stage("vecm", [&] {
        return fit_vecm(data, report.selected_lag, report.selected_rank, config.trend);
    });
    for (const auto& name : report.model.variable_names) {
        report.vecm_tables.push_back(coefficient_table(report.model, name));
    }

    stage("diagnostics", [&] {
        try {
            report.lm = lm_autocorr(report.model, report.selected_lag);
        } catch (const Error& e) {
            // The auxiliary regression runs out of degrees of freedom before
            // the other checks do; report that instead of aborting the study.
            report.lm_note = e.what();
        }
        report.normality = normality_test(report.model);
        report.stability = stability_check(report.model);
        return 0;
    });

    // The published convention: causality is read off at the 10% level.
    report.causality = causality_summary(report.model, 0.10);
    report.narrative = render_narrative(report.causality);
    return report;
}

std::string render_report_text(const StudyReport& r) {
    std::ostringstream out;
    out << "Study pipeline: " << r.config.input_path << "   Sample: " << r.sample_label
        << "   level = " << r.config.level << "   trend = " << to_string(r.config.trend)
        << '\n';
    if (!r.dropped_rows.empty()) {
        out << "Warning: dropped rows with empty cells at periods";
        for (const auto& [row, period] : r.dropped_rows) out << ' ' << period;
        out << '\n';
    }
    out << '\n' << render_unitroot_table(r.unit_root) << '\n';
    out << render_lag_table(r.lag_table);
    out << "Selected lag (majority rule";
    if (r.config.lag_override) out << ", overridden";
    out << "): " << r.selected_lag << "\n\n";
    const auto& periods = r.model.periods;
    const std::string est_label =
        periods.size() > static_cast<std::size_t>(r.rank_table.lags)
            ? std::to_string(periods[static_cast<std::size_t>(r.rank_table.lags)]) + " - " +
                  std::to_string(periods.back())
            : r.sample_label;
    out << render_rank_table(r.rank_table, est_label);
    if (r.config.rank_override) out << "Rank override in effect: " << r.selected_rank << '\n';
    out << '\n' << render_vecm_tables(r.model) << '\n';
    if (r.lm_note.empty()) {
        out << render_lm_table(r.lm) << '\n';
    } else {
        out << "Lagrange-multiplier test\n(not computed: " << r.lm_note << ")\n\n";
    }
    out << render_normality_table(r.normality) << '\n';
    out << render_stability_table(r.stability) << '\n';
    out << r.narrative;
    return out.str();
}

void to_json(json& j, const PipelineConfig& c) {
    j = json{{"input", c.input_path},
             {"date_column", c.date_column},
             {"variables", c.variables},
             {"pmax", c.pmax},
             {"level", c.level},
             {"trend", to_string(c.trend)},
             {"format", c.format == OutputFormat::text ? "text" : "json"},
             {"seed", c.seed}};
    json tf = json::array();
    for (auto t : c.transforms) tf.push_back(to_string(t));
    j["transforms"] = std::move(tf);
    if (c.lag_override) j["lags"] = *c.lag_override;
    if (c.rank_override) j["rank"] = *c.rank_override;
    if (c.sample_start) j["sample_start"] = *c.sample_start;
    if (c.sample_end) j["sample_end"] = *c.sample_end;
}

void from_json(const json& j, PipelineConfig& c) {
    c.input_path = j.at("input").get<std::string>();
    c.date_column = j.at("date_column").get<std::string>();
    j.at("variables").get_to(c.variables);
    c.transforms.clear();
    for (const auto& t : j.at("transforms")) {
        c.transforms.push_back(parse_transform(t.get<std::string>()));
    }
    j.at("pmax").get_to(c.pmax);
    j.at("level").get_to(c.level);
    c.trend = parse_trend(j.at("trend").get<std::string>());
    c.format = parse_format(j.at("format").get<std::string>());
    j.at("seed").get_to(c.seed);
    c.lag_override = j.contains("lags") ? std::optional<int>(j.at("lags").get<int>()) : std::nullopt;
    c.rank_override = j.contains("rank") ? std::optional<int>(j.at("rank").get<int>()) : std::nullopt;
    c.sample_start =
        j.contains("sample_start") ? std::optional<int>(j.at("sample_start").get<int>()) : std::nullopt;
    c.sample_end =
        j.contains("sample_end") ? std::optional<int>(j.at("sample_end").get<int>()) : std::nullopt;
}

void to_json(json& j, const StudyReport& r) {
    json dropped = json::array();
    for (const auto& [row, period] : r.dropped_rows) {
        dropped.push_back(json{{"row", row}, {"period", period}});
    }
    j = json{{"schema", "vecmkit.report.v1"},
             {"config", r.config},
             {"dropped_rows", std::move(dropped)},
             {"sample", r.sample_label},
             {"unit_root", r.unit_root},
             {"lag_table", r.lag_table},
             {"selected_lag", r.selected_lag},
             {"rank_table", r.rank_table},
             {"selected_rank", r.selected_rank},
             {"vecm", r.model},
             {"coefficient_tables", r.vecm_tables},
             {"lm", r.lm},
             {"lm_note", r.lm_note},
             {"normality", r.normality},
             {"stability", r.stability},
             {"causality", r.causality},
             {"narrative", r.narrative}};
}

void from_json(const json& j, StudyReport& r) {
    if (j.at("schema").get<std::string>() != "vecmkit.report.v1") {
        throw Error("unsupported report schema");
    }
    j.at("config").get_to(r.config);
    r.dropped_rows.clear();
    for (const auto& d : j.at("dropped_rows")) {
        r.dropped_rows.emplace_back(d.at("row").get<int>(), d.at("period").get<int>());
    }
    j.at("sample").get_to(r.sample_label);
    j.at("unit_root").get_to(r.unit_root);
    j.at("lag_table").get_to(r.lag_table);
    j.at("selected_lag").get_to(r.selected_lag);
    j.at("rank_table").get_to(r.rank_table);
    j.at("selected_rank").get_to(r.selected_rank);
    j.at("vecm").get_to(r.model);
    j.at("coefficient_tables").get_to(r.vecm_tables);
    j.at("lm").get_to(r.lm);
    j.at("lm_note").get_to(r.lm_note);
    j.at("normality").get_to(r.normality);
    j.at("stability").get_to(r.stability);
    j.at("causality").get_to(r.causality);
    j.at("narrative").get_to(r.narrative);
}

std::string render_report_json(const StudyReport& r) {
    return json(r).dump(2) + "\n";
}

} // namespace vecmkit
