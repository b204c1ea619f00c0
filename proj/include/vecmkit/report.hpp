#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vecmkit/diagnostics.hpp"
#include "vecmkit/johansen.hpp"
#include "vecmkit/lagselect.hpp"
#include "vecmkit/unitroot.hpp"
#include "vecmkit/vecm.hpp"

// Fixed-width text tables mirroring the usual econometric report layouts,
// and a versioned JSON form for every table (schema "vecmkit.report.v1",
// documented in the README). All numeric text carries at least four decimal
// places; optional cells render blank.

namespace vecmkit {

std::string render_unitroot_table(const std::vector<IntegrationVerdict>& verdicts);
std::string render_lag_table(const LagTable& t);
std::string render_rank_table(const RankTestResult& t,
                              const std::string& sample_label = "");
std::string render_coefficient_table(const std::vector<CoefficientRow>& rows);
std::string render_vecm_tables(const VecmModel& m);
std::string render_lm_table(const std::vector<LmRow>& rows);
std::string render_normality_table(const std::vector<NormalityRow>& rows);
std::string render_stability_table(const StabilityReport& r);
std::string render_narrative(const CausalitySummary& s);

// JSON round-trips: from_json(to_json(x)) reproduces x exactly.
void to_json(nlohmann::json& j, const PpResult& r);
void from_json(const nlohmann::json& j, PpResult& r);
void to_json(nlohmann::json& j, const IntegrationVerdict& v);
void from_json(const nlohmann::json& j, IntegrationVerdict& v);
void to_json(nlohmann::json& j, const LagRow& r);
void from_json(const nlohmann::json& j, LagRow& r);
void to_json(nlohmann::json& j, const LagTable& t);
void from_json(const nlohmann::json& j, LagTable& t);
void to_json(nlohmann::json& j, const RankRow& r);
void from_json(const nlohmann::json& j, RankRow& r);
void to_json(nlohmann::json& j, const RankTestResult& t);
void from_json(const nlohmann::json& j, RankTestResult& t);
void to_json(nlohmann::json& j, const CoefficientRow& r);
void from_json(const nlohmann::json& j, CoefficientRow& r);
void to_json(nlohmann::json& j, const VecmModel& m);
void from_json(const nlohmann::json& j, VecmModel& m);
void to_json(nlohmann::json& j, const LmRow& r);
void from_json(const nlohmann::json& j, LmRow& r);
void to_json(nlohmann::json& j, const NormalityRow& r);
void from_json(const nlohmann::json& j, NormalityRow& r);
void to_json(nlohmann::json& j, const StabilityReport& r);
void from_json(const nlohmann::json& j, StabilityReport& r);
void to_json(nlohmann::json& j, const EquationCausality& c);
void from_json(const nlohmann::json& j, EquationCausality& c);
void to_json(nlohmann::json& j, const CausalitySummary& s);
void from_json(const nlohmann::json& j, CausalitySummary& s);

} // namespace vecmkit
