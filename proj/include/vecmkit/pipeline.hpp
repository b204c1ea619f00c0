#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vecmkit/report.hpp"

namespace vecmkit {

enum class OutputFormat { text, json };

OutputFormat parse_format(const std::string& text);

/// Everything a full study run needs. Defaults mirror the toolkit's
/// conventions: pmax 4, 5% significance, unrestricted constant.
struct PipelineConfig {
    std::string input_path;
    std::string date_column = "year";
    std::vector<std::string> variables;  // empty = all, in file order
    std::vector<Transform> transforms;   // empty = level for every variable
    int pmax = 4;
    double level = 0.05; // one of 0.01 / 0.05 / 0.10
    TrendCase trend = TrendCase::constant;
    std::optional<int> lag_override;
    std::optional<int> rank_override;
    std::optional<int> sample_start;
    std::optional<int> sample_end;
    OutputFormat format = OutputFormat::text;
    std::uint64_t seed = 0; // only simulation subcommands draw numbers

    void validate() const;
};

/// Full study artifact, stage tables in pipeline order.
struct StudyReport {
    PipelineConfig config;
    std::vector<std::pair<int, int>> dropped_rows; // (file row, period)
    std::string sample_label;                      // e.g. "1996 - 2017"
    std::vector<IntegrationVerdict> unit_root;
    LagTable lag_table;
    int selected_lag = 0;
    RankTestResult rank_table;
    int selected_rank = 0;
    VecmModel model;
    std::vector<std::vector<CoefficientRow>> vecm_tables; // one per equation
    std::vector<LmRow> lm;
    std::string lm_note; // set when the LM test is infeasible at this sample
    std::vector<NormalityRow> normality;
    StabilityReport stability;
    CausalitySummary causality;
    std::string narrative;
};

/// unitroot -> lagselect -> johansen -> vecm -> diagnostics, threading the
/// selected lag and rank unless overridden. Errors carry the failing stage's
/// name. Deterministic given the config.
StudyReport run_pipeline(const PipelineConfig& config);

std::string render_report_text(const StudyReport& r);

void to_json(nlohmann::json& j, const PipelineConfig& c);
void from_json(const nlohmann::json& j, PipelineConfig& c);
void to_json(nlohmann::json& j, const StudyReport& r);
void from_json(const nlohmann::json& j, StudyReport& r);

/// Machine-readable report ("vecmkit.report.v1"), byte-identical across runs
/// of the same config.
std::string render_report_json(const StudyReport& r);

} // namespace vecmkit
