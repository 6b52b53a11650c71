#include "fluxlogic/io.hpp"

#include <fstream>
#include <sstream>

#include "fluxlogic/errors.hpp"
#include "fluxlogic/semantics.hpp"

namespace fluxlogic {

namespace {

[[noreturn]] void reject(const std::string& what) { throw load_error(what); }

const Json& require(const Json& json, const char* key, const char* where) {
  auto it = json.find(key);
  if (it == json.end()) reject(std::string(where) + ": missing key \"" + key + "\"");
  return *it;
}

void check_keys(const Json& json, std::initializer_list<const char*> allowed, const char* where) {
  if (!json.is_object()) reject(std::string(where) + ": expected a JSON object");
  for (const auto& [key, value] : json.items()) {
    bool known = false;
    for (const char* candidate : allowed)
      if (key == candidate) known = true;
    if (!known) reject(std::string(where) + ": unknown key \"" + key + "\"");
  }
}

std::string as_string(const Json& json, const char* where) {
  if (!json.is_string()) reject(std::string(where) + ": expected a string");
  return json.get<std::string>();
}

std::uint64_t as_unsigned(const Json& json, const char* where) {
  if (!json.is_number_unsigned()) reject(std::string(where) + ": expected a non-negative integer");
  return json.get<std::uint64_t>();
}

std::vector<std::string> as_string_array(const Json& json, const char* where) {
  if (!json.is_array()) reject(std::string(where) + ": expected an array");
  std::vector<std::string> out;
  for (const Json& item : json) out.push_back(as_string(item, where));
  return out;
}

Json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) reject("cannot open '" + path.string() + "'");
  Json json;
  try {
    json = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    reject("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return json;
}

}  // namespace

// ---------------------------------------------------------------------------
// Structure files

FluxingStructure structure_from_json(const Json& json) {
  check_keys(json, {"universe", "predicates", "agents", "objects"}, "structure");

  ClassicalStructure base;
  base.universe = as_string_array(require(json, "universe", "structure"), "universe");

  const Json& predicates = require(json, "predicates", "structure");
  if (!predicates.is_array()) reject("predicates: expected an array");
  for (const Json& entry : predicates) {
    check_keys(entry, {"name", "arity", "tuples"}, "predicate");
    Predicate pred;
    pred.name = as_string(require(entry, "name", "predicate"), "predicate name");
    pred.arity = as_unsigned(require(entry, "arity", "predicate"), "predicate arity");
    if (pred.arity == 0)
      reject("predicate \"" + pred.name + "\": arity 0 is not allowed; predicates take arguments");
    const Json& tuples = require(entry, "tuples", "predicate");
    if (!tuples.is_array()) reject("predicate \"" + pred.name + "\" tuples: expected an array");
    for (const Json& tuple : tuples)
      pred.tuples.push_back(as_string_array(tuple, "predicate tuple"));
    base.predicates.push_back(std::move(pred));
  }

  std::vector<AgentId> agents = as_string_array(require(json, "agents", "structure"), "agents");

  std::vector<FluxingObject> objects;
  const Json& object_array = require(json, "objects", "structure");
  if (!object_array.is_array()) reject("objects: expected an array");
  for (const Json& entry : object_array) {
    check_keys(entry, {"name", "entries"}, "object");
    FluxingObject object;
    object.name = as_string(require(entry, "name", "object"), "object name");
    const Json& entries = require(entry, "entries", "object");
    if (!entries.is_array()) reject("object \"" + object.name + "\" entries: expected an array");
    for (const Json& item : entries) {
      check_keys(item, {"agent", "time", "form"}, "object entry");
      AgentId agent = as_string(require(item, "agent", "object entry"), "entry agent");
      TimePoint time = as_unsigned(require(item, "time", "object entry"), "entry time");
      FormId form = as_string(require(item, "form", "object entry"), "entry form");
      auto [it, inserted] = object.entries.emplace(std::make_pair(agent, time), form);
      if (!inserted)
        reject("object \"" + object.name + "\" defines (agent \"" + agent + "\", t=" +
               std::to_string(time) + ") twice; an object shows one form per agent and time");
    }
    objects.push_back(std::move(object));
  }

  return FluxingStructure(std::move(base), std::move(agents), std::move(objects));
}

Json structure_to_json(const FluxingStructure& structure) {
  Json out;
  out["universe"] = structure.base().universe;
  out["predicates"] = Json::array();
  for (const Predicate& pred : structure.base().predicates) {
    Json entry;
    entry["name"] = pred.name;
    entry["arity"] = pred.arity;
    entry["tuples"] = pred.tuples;
    out["predicates"].push_back(std::move(entry));
  }
  out["agents"] = structure.agents();
  out["objects"] = Json::array();
  for (const FluxingObject& object : structure.objects()) {
    Json entry;
    entry["name"] = object.name;
    entry["entries"] = Json::array();
    for (const auto& [key, form] : object.entries) {
      Json item;
      item["agent"] = key.first;
      item["time"] = key.second;
      item["form"] = form;
      entry["entries"].push_back(std::move(item));
    }
    out["objects"].push_back(std::move(entry));
  }
  return out;
}

std::string structure_file_text(const FluxingStructure& structure) {
  return structure_to_json(structure).dump(2) + "\n";
}

FluxingStructure load_structure(const std::filesystem::path& path) {
  return structure_from_json(parse_file(path));
}

void save_structure(const FluxingStructure& structure, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw load_error("cannot write '" + path.string() + "'");
  out << structure_file_text(structure);
}

// ---------------------------------------------------------------------------
// Scenario specs

ScenarioSpec scenario_spec_from_json(const Json& json) {
  check_keys(json, {"kind", "threshold", "horizon", "watch_pattern", "offset", "seed"},
             "scenario spec");
  ScenarioSpec spec;
  std::string kind = as_string(require(json, "kind", "scenario spec"), "scenario kind");
  auto parsed = scenario_kind_from_string(kind);
  if (!parsed)
    reject("scenario kind \"" + kind + "\" is not one of counter, heap, baldness, horizon");
  spec.kind = *parsed;
  spec.threshold = as_unsigned(require(json, "threshold", "scenario spec"), "threshold");
  spec.horizon = as_unsigned(require(json, "horizon", "scenario spec"), "horizon");
  if (auto it = json.find("offset"); it != json.end()) spec.offset = as_unsigned(*it, "offset");
  if (auto it = json.find("seed"); it != json.end()) spec.seed = as_unsigned(*it, "seed");
  if (auto it = json.find("watch_pattern"); it != json.end()) {
    if (!it->is_object()) reject("watch_pattern: expected an object mapping agents to time arrays");
    for (const auto& [agent, times] : it->items()) {
      if (!times.is_array()) reject("watch_pattern for agent \"" + agent + "\": expected an array");
      std::vector<TimePoint> parsed_times;
      for (const Json& t : times) parsed_times.push_back(as_unsigned(t, "watch_pattern time"));
      spec.watch_pattern.emplace(agent, std::move(parsed_times));
    }
  }
  return spec;
}

Json scenario_spec_to_json(const ScenarioSpec& spec) {
  Json out;
  out["kind"] = to_string(spec.kind);
  out["threshold"] = spec.threshold;
  out["horizon"] = spec.horizon;
  out["watch_pattern"] = Json::object();
  for (const auto& [agent, times] : spec.watch_pattern) out["watch_pattern"][agent] = times;
  out["offset"] = spec.offset;
  out["seed"] = spec.seed;
  return out;
}

ScenarioSpec load_scenario_spec(const std::filesystem::path& path) {
  return scenario_spec_from_json(parse_file(path));
}

// ---------------------------------------------------------------------------
// Reports

Json to_json(const Interval& interval) { return Json::array({interval.lo, interval.hi}); }

Interval interval_from_json(const Json& json) {
  if (!json.is_array() || json.size() != 2)
    reject("interval: expected a two-element array [lo, hi]");
  Interval out{as_unsigned(json[0], "interval lo"), as_unsigned(json[1], "interval hi")};
  if (out.lo > out.hi) reject("interval: lo exceeds hi");
  return out;
}

Json to_json(const ValidationReport& report) {
  Json out;
  out["ok"] = report.ok;
  out["violations"] = Json::array();
  for (const Violation& v : report.violations) {
    Json entry;
    entry["rule"] = v.rule;
    entry["description"] = v.description;
    entry["names"] = v.names;
    out["violations"].push_back(std::move(entry));
  }
  return out;
}

ValidationReport validation_report_from_json(const Json& json) {
  check_keys(json, {"ok", "violations"}, "validation report");
  const Json& ok = require(json, "ok", "validation report");
  if (!ok.is_boolean()) reject("validation report: \"ok\" must be a boolean");
  ValidationReport report;
  report.ok = ok.get<bool>();
  const Json& violations = require(json, "violations", "validation report");
  if (!violations.is_array()) reject("validation report: \"violations\" must be an array");
  for (const Json& entry : violations) {
    check_keys(entry, {"rule", "description", "names"}, "violation");
    Violation v;
    v.rule = as_string(require(entry, "rule", "violation"), "violation rule");
    v.description = as_string(require(entry, "description", "violation"), "violation description");
    v.names = as_string_array(require(entry, "names", "violation"), "violation names");
    report.violations.push_back(std::move(v));
  }
  return report;
}

Json to_json(const GapReport& report) {
  Json out;
  out["gaps"] = Json::array();
  for (const Interval& gap : report.gaps) out["gaps"].push_back(to_json(gap));
  return out;
}

GapReport gap_report_from_json(const Json& json) {
  check_keys(json, {"gaps"}, "gap report");
  const Json& gaps = require(json, "gaps", "gap report");
  if (!gaps.is_array()) reject("gap report: \"gaps\" must be an array");
  GapReport report;
  for (const Json& gap : gaps) report.gaps.push_back(interval_from_json(gap));
  return report;
}

namespace {

TruthValue truth_value_from_json(const Json& json, const char* where) {
  std::string text = as_string(json, where);
  if (text.size() == 1)
    if (auto value = truth_value_from_char(text[0])) return *value;
  reject(std::string(where) + ": expected \"T\", \"U\" or \"F\"");
}

}  // namespace

Json to_json(const ViewChange& change) {
  Json out;
  out["agent"] = change.agent;
  out["object"] = change.object;
  out["from_time"] = change.from_time;
  out["to_time"] = change.to_time;
  out["from_value"] = to_string(change.from_value);
  out["to_value"] = to_string(change.to_value);
  return out;
}

ViewChange view_change_from_json(const Json& json) {
  check_keys(json, {"agent", "object", "from_time", "to_time", "from_value", "to_value"},
             "view change");
  ViewChange change;
  change.agent = as_string(require(json, "agent", "view change"), "view change agent");
  change.object = as_string(require(json, "object", "view change"), "view change object");
  change.from_time = as_unsigned(require(json, "from_time", "view change"), "from_time");
  change.to_time = as_unsigned(require(json, "to_time", "view change"), "to_time");
  change.from_value = truth_value_from_json(require(json, "from_value", "view change"), "from_value");
  change.to_value = truth_value_from_json(require(json, "to_value", "view change"), "to_value");
  return change;
}

Json to_json(const IcResult& result) {
  Json out;
  out["ic"] = result.ic;
  if (result.counterexample) {
    Json ce;
    ce["agent"] = result.counterexample->agent;
    ce["time"] = result.counterexample->time;
    out["counterexample"] = std::move(ce);
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

IcResult ic_result_from_json(const Json& json) {
  check_keys(json, {"ic", "counterexample"}, "ic result");
  const Json& ic = require(json, "ic", "ic result");
  if (!ic.is_boolean()) reject("ic result: \"ic\" must be a boolean");
  IcResult result;
  result.ic = ic.get<bool>();
  const Json& ce = require(json, "counterexample", "ic result");
  if (!ce.is_null()) {
    check_keys(ce, {"agent", "time"}, "ic counterexample");
    result.counterexample =
        IcCounterexample{as_string(require(ce, "agent", "ic counterexample"), "agent"),
                         as_unsigned(require(ce, "time", "ic counterexample"), "time")};
  }
  return result;
}

Json to_json(const Prop33Report& report) {
  Json out;
  out["ic_objects_checked"] = report.ic_objects_checked;
  out["excluded"] = Json::array();
  for (const ExcludedObject& entry : report.excluded) {
    Json item;
    item["object"] = entry.object;
    item["agent"] = entry.counterexample.agent;
    item["time"] = entry.counterexample.time;
    out["excluded"].push_back(std::move(item));
  }
  out["view_changes"] = Json::array();
  for (const ViewChangeWithGaps& entry : report.view_changes) {
    Json item;
    item["change"] = to_json(entry.change);
    item["gaps"] = to_json(entry.gaps)["gaps"];
    out["view_changes"].push_back(std::move(item));
  }
  out["violations"] = Json::array();
  for (const ViewChange& change : report.violations) out["violations"].push_back(to_json(change));
  return out;
}

Prop33Report prop33_report_from_json(const Json& json) {
  check_keys(json, {"ic_objects_checked", "excluded", "view_changes", "violations"},
             "necessity report");
  Prop33Report report;
  report.ic_objects_checked = as_string_array(
      require(json, "ic_objects_checked", "necessity report"), "ic_objects_checked");
  const Json& excluded = require(json, "excluded", "necessity report");
  if (!excluded.is_array()) reject("necessity report: \"excluded\" must be an array");
  for (const Json& entry : excluded) {
    check_keys(entry, {"object", "agent", "time"}, "excluded object");
    ExcludedObject item;
    item.object = as_string(require(entry, "object", "excluded object"), "object");
    item.counterexample.agent = as_string(require(entry, "agent", "excluded object"), "agent");
    item.counterexample.time = as_unsigned(require(entry, "time", "excluded object"), "time");
    report.excluded.push_back(std::move(item));
  }
  const Json& changes = require(json, "view_changes", "necessity report");
  if (!changes.is_array()) reject("necessity report: \"view_changes\" must be an array");
  for (const Json& entry : changes) {
    check_keys(entry, {"change", "gaps"}, "view change with gaps");
    ViewChangeWithGaps item;
    item.change = view_change_from_json(require(entry, "change", "view change with gaps"));
    const Json& gaps = require(entry, "gaps", "view change with gaps");
    if (!gaps.is_array()) reject("view change with gaps: \"gaps\" must be an array");
    for (const Json& gap : gaps) item.gaps.gaps.push_back(interval_from_json(gap));
    report.view_changes.push_back(std::move(item));
  }
  const Json& violations = require(json, "violations", "necessity report");
  if (!violations.is_array()) reject("necessity report: \"violations\" must be an array");
  for (const Json& entry : violations)
    report.violations.push_back(view_change_from_json(entry));
  return report;
}

Json to_json(const ThresholdCrossing& crossing) {
  Json out;
  out["time"] = crossing.time;
  out["gap_by_agent"] = Json::object();
  for (const auto& [agent, gap] : crossing.gap_by_agent)
    out["gap_by_agent"][agent] = gap ? to_json(*gap) : Json(nullptr);
  return out;
}

ThresholdCrossing threshold_crossing_from_json(const Json& json) {
  check_keys(json, {"time", "gap_by_agent"}, "threshold crossing");
  ThresholdCrossing crossing;
  crossing.time = as_unsigned(require(json, "time", "threshold crossing"), "crossing time");
  const Json& gaps = require(json, "gap_by_agent", "threshold crossing");
  if (!gaps.is_object()) reject("threshold crossing: \"gap_by_agent\" must be an object");
  for (const auto& [agent, gap] : gaps.items())
    crossing.gap_by_agent.emplace(agent,
                                  gap.is_null() ? std::nullopt
                                                : std::optional<Interval>(interval_from_json(gap)));
  return crossing;
}

}  // namespace fluxlogic
