#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "fluxlogic/analysis.hpp"
#include "fluxlogic/interval.hpp"
#include "fluxlogic/structure.hpp"

namespace fluxlogic {

// Key order is part of the canonical file format, so everything goes through
// the order-preserving variant.
using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Structure files
//
// {
//   "universe":   ["0", "1", ...],
//   "predicates": [{"name": "P", "arity": 1, "tuples": [["5"], ...]}],
//   "agents":     ["0"],
//   "objects":    [{"name": "f",
//                   "entries": [{"agent": "0", "time": 0, "form": "0"}, ...]}]
// }
//
// Loading rejects only what the in-memory types cannot represent: malformed
// JSON, wrong shapes, a duplicate (agent, time) inside one object, arity 0.
// Reportable problems (duplicate names, unknown forms, shared ranges, ...)
// load fine and are validate()'s business.

FluxingStructure structure_from_json(const Json& json);
Json structure_to_json(const FluxingStructure& structure);

// The canonical byte representation: two-space indent, trailing newline.
// Loading a file and saving it again reproduces it exactly.
std::string structure_file_text(const FluxingStructure& structure);

FluxingStructure load_structure(const std::filesystem::path& path);
void save_structure(const FluxingStructure& structure, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Scenario specs
//
// {"kind": "counter", "threshold": 5, "horizon": 9,
//  "watch_pattern": {"0": [0, 1, 2, 3, 7, 8, 9]}, "offset": 0, "seed": 0}
//
// watch_pattern, offset and seed are optional.

ScenarioSpec scenario_spec_from_json(const Json& json);
Json scenario_spec_to_json(const ScenarioSpec& spec);
ScenarioSpec load_scenario_spec(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Report types. Every to_json here has a matching from_json that
// reconstructs an equal value; malformed input is a load_error.

Json to_json(const Interval& interval);  // [lo, hi]
Interval interval_from_json(const Json& json);

Json to_json(const ValidationReport& report);
ValidationReport validation_report_from_json(const Json& json);

Json to_json(const GapReport& report);
GapReport gap_report_from_json(const Json& json);

Json to_json(const ViewChange& change);
ViewChange view_change_from_json(const Json& json);

Json to_json(const IcResult& result);
IcResult ic_result_from_json(const Json& json);

Json to_json(const Prop33Report& report);
Prop33Report prop33_report_from_json(const Json& json);

Json to_json(const ThresholdCrossing& crossing);
ThresholdCrossing threshold_crossing_from_json(const Json& json);

}  // namespace fluxlogic
