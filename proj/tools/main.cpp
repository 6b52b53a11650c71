// fluxlogic — command-line front end for the fluxing-object library.
//
// Exit codes: 0 success (and "property holds" outcomes), 1 findings
// (validation failures, necessity violations), 2 usage, parse, load or
// contract errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fluxlogic/analysis.hpp"
#include "fluxlogic/errors.hpp"
#include "fluxlogic/formula.hpp"
#include "fluxlogic/interval.hpp"
#include "fluxlogic/io.hpp"
#include "fluxlogic/semantics.hpp"
#include "fluxlogic/structure.hpp"

namespace {

using namespace fluxlogic;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw load_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Formula arguments may be given inline or as "@file".
std::string formula_text(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return read_text_file(arg.substr(1));
  return arg;
}

void emit_json(const Json& json) { std::cout << json.dump(2) << "\n"; }

// --------------------------------------------------------------------------

struct ValidateArgs {
  std::string file;
  bool json = false;
};

int run_validate(const ValidateArgs& args) {
  FluxingStructure structure = load_structure(args.file);
  ValidationReport report = validate(structure);
  if (args.json) {
    emit_json(to_json(report));
  } else if (report.ok) {
    std::cout << "ok\n";
  } else {
    for (const Violation& v : report.violations)
      std::cout << "violation " << v.rule << ": " << v.description << "\n";
  }
  return report.ok ? 0 : 1;
}

struct EvalArgs {
  std::string file;
  std::string formula;
  std::string agent;
  TimePoint time = 0;
  bool json = false;
};

int run_eval(const EvalArgs& args) {
  FluxingStructure structure = load_structure(args.file);
  BoundFormula bound = bind(parse(formula_text(args.formula)), structure);
  Context ctx(structure, args.agent, args.time);
  TruthValue value = valuation(ctx, bound);
  if (args.json) {
    Json out;
    out["value"] = to_string(value);
    emit_json(out);
  } else {
    std::cout << to_char(value) << "\n";
  }
  return 0;
}

struct TableArgs {
  std::string connective;
  bool json = false;
};

int run_table(const TableArgs& args) {
  Connective connective;
  if (args.connective == "not")
    connective = Connective::Not;
  else if (args.connective == "and")
    connective = Connective::And;
  else if (args.connective == "or")
    connective = Connective::Or;
  else
    throw std::invalid_argument("unknown connective '" + args.connective +
                                "'; expected not, and or or");
  if (args.json) {
    static constexpr TruthValue kOrder[3] = {TruthValue::True, TruthValue::Unknown,
                                             TruthValue::False};
    Json out;
    out["connective"] = args.connective;
    out["order"] = Json::array({"T", "U", "F"});
    Json rows = Json::array();
    if (connective == Connective::Not) {
      for (TruthValue v : kOrder) rows.push_back(to_string(kleene_not(v)));
    } else {
      for (TruthValue row : kOrder) {
        Json cells = Json::array();
        for (TruthValue col : kOrder)
          cells.push_back(to_string(connective == Connective::And ? kleene_and(row, col)
                                                                  : kleene_or(row, col)));
        rows.push_back(std::move(cells));
      }
    }
    out["rows"] = std::move(rows);
    emit_json(out);
  } else {
    std::cout << truth_table(connective);
  }
  return 0;
}

struct AnalyzeIcArgs {
  std::string file;
  std::string property;
  std::string hole = "x";
  bool json = false;
};

int run_analyze_ic(const AnalyzeIcArgs& args) {
  FluxingStructure structure = load_structure(args.file);
  PropertySlot property = PropertySlot::parse_text(formula_text(args.property), args.hole);
  Json objects = Json::array();
  for (const FluxingObject& object : structure.objects()) {
    IcResult result = is_ic(structure, object.name, property);
    if (args.json) {
      Json entry = to_json(result);
      Json keyed;
      keyed["object"] = object.name;
      for (auto& [key, value] : entry.items()) keyed[key] = value;
      objects.push_back(std::move(keyed));
    } else if (result.ic) {
      std::cout << "ic " << object.name << "\n";
    } else {
      std::cout << "not-ic " << object.name << " agent=" << result.counterexample->agent
                << " t=" << result.counterexample->time << "\n";
    }
  }
  if (args.json) {
    Json out;
    out["objects"] = std::move(objects);
    emit_json(out);
  }
  return 0;
}

struct GapsArgs {
  std::string file;
  std::string object;
  std::string agent;
  TimePoint from = 0;
  TimePoint to = 0;
  bool json = false;
};

int run_gaps(const GapsArgs& args) {
  FluxingStructure structure = load_structure(args.file);
  GapReport report = locate_gaps(structure, args.object, args.agent, args.from, args.to);
  if (args.json) {
    emit_json(to_json(report));
  } else {
    for (const Interval& gap : report.gaps) std::cout << to_string(gap) << "\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string file;
  std::string property;
  std::string hole = "x";
  bool json = false;
};

int run_verify(const VerifyArgs& args) {
  FluxingStructure structure = load_structure(args.file);
  PropertySlot property = PropertySlot::parse_text(formula_text(args.property), args.hole);
  Prop33Report report = verify_prop33(structure, property);
  if (args.json) {
    emit_json(to_json(report));
  } else {
    for (const ObjectName& object : report.ic_objects_checked) std::cout << "ic " << object << "\n";
    for (const ExcludedObject& entry : report.excluded)
      std::cout << "excluded " << entry.object << " agent=" << entry.counterexample.agent
                << " t=" << entry.counterexample.time << "\n";
    for (const ViewChangeWithGaps& entry : report.view_changes) {
      std::cout << "change " << entry.change.object << " agent=" << entry.change.agent << " t="
                << entry.change.from_time << "->" << entry.change.to_time << " "
                << to_char(entry.change.from_value) << "->" << to_char(entry.change.to_value)
                << " gaps";
      if (entry.gaps.empty()) std::cout << " none";
      for (const Interval& gap : entry.gaps.gaps) std::cout << " " << to_string(gap);
      std::cout << "\n";
    }
    std::cout << "violations " << report.violations.size() << "\n";
  }
  return report.violations.empty() ? 0 : 1;
}

struct ScenarioArgs {
  std::string kind = "counter";
  std::uint64_t threshold = 0;
  std::uint64_t horizon = 0;
  std::uint64_t offset = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> watch;
  std::string spec_file;
  std::string out_file;
  bool json = false;
  bool kind_given = false;
  bool threshold_given = false;
  bool horizon_given = false;
  bool offset_given = false;
  bool seed_given = false;
};

// "--watch agent=0-3,7,9-12": one agent's watched times as numbers and
// ranges.
std::pair<AgentId, std::vector<TimePoint>> parse_watch_flag(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("--watch expects agent=times, e.g. 0=0-3,7-9: got '" + text + "'");
  AgentId agent = text.substr(0, eq);
  std::vector<TimePoint> times;
  std::string rest = text.substr(eq + 1);
  std::istringstream parts(rest);
  std::string part;
  while (std::getline(parts, part, ',')) {
    if (part.empty()) throw std::invalid_argument("--watch has an empty time entry in '" + text + "'");
    std::size_t used = 0;
    std::uint64_t lo = std::stoull(part, &used);
    std::uint64_t hi = lo;
    if (used < part.size()) {
      if (part[used] != '-')
        throw std::invalid_argument("--watch cannot parse time entry '" + part + "'");
      std::size_t used2 = 0;
      hi = std::stoull(part.substr(used + 1), &used2);
      if (used + 1 + used2 != part.size())
        throw std::invalid_argument("--watch cannot parse time entry '" + part + "'");
      if (hi < lo) throw std::invalid_argument("--watch range '" + part + "' runs backwards");
    }
    for (std::uint64_t t = lo; t <= hi; ++t) times.push_back(t);
  }
  if (times.empty()) throw std::invalid_argument("--watch lists no times in '" + text + "'");
  return {std::move(agent), std::move(times)};
}

int run_scenario(const ScenarioArgs& args) {
  ScenarioSpec spec;
  if (!args.spec_file.empty()) {
    spec = load_scenario_spec(args.spec_file);
  } else {
    if (!args.kind_given || !args.threshold_given || !args.horizon_given)
      throw std::invalid_argument("scenario needs either --spec or all of --kind, --threshold, --horizon");
    auto kind = scenario_kind_from_string(args.kind);
    if (!kind)
      throw std::invalid_argument("unknown scenario kind '" + args.kind +
                                  "'; expected counter, heap, baldness or horizon");
    spec.kind = *kind;
    spec.threshold = args.threshold;
    spec.horizon = args.horizon;
    spec.offset = args.offset;
    spec.seed = args.seed;
    for (const std::string& flag : args.watch) {
      auto [agent, times] = parse_watch_flag(flag);
      auto& slot = spec.watch_pattern[agent];
      slot.insert(slot.end(), times.begin(), times.end());
    }
  }

  // The environment can force a seed, whatever the spec or flags said.
  if (const char* env = std::getenv("FLUXLOGIC_SEED"); env && *env) {
    std::size_t used = 0;
    std::uint64_t seed = std::stoull(env, &used);
    if (used != std::string(env).size())
      throw std::invalid_argument("FLUXLOGIC_SEED is not a number: '" + std::string(env) + "'");
    spec.seed = seed;
  }

  Scenario scenario = generate_scenario(spec);

  if (args.json) {
    Json out;
    out["spec"] = scenario_spec_to_json(spec);
    if (args.out_file.empty()) {
      out["path"] = nullptr;
      out["structure"] = structure_to_json(scenario.structure);
    } else {
      save_structure(scenario.structure, args.out_file);
      out["path"] = args.out_file;
    }
    out["crossing"] = scenario.crossing ? to_json(*scenario.crossing) : Json(nullptr);
    emit_json(out);
    return 0;
  }

  if (args.out_file.empty()) {
    std::cout << structure_file_text(scenario.structure);
  } else {
    save_structure(scenario.structure, args.out_file);
    std::cout << "wrote " << args.out_file << "\n";
  }
  if (scenario.crossing) {
    std::cout << "crossing t=" << scenario.crossing->time << "\n";
    for (const auto& [agent, gap] : scenario.crossing->gap_by_agent) {
      if (gap)
        std::cout << "crossing-gap agent=" << agent << " " << to_string(*gap) << "\n";
      else
        std::cout << "crossing-watched agent=" << agent << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fluxing-object semantics: three-valued evaluation, watching gaps, vagueness analysis"};
  app.require_subcommand(1);

  ValidateArgs validate_args;
  auto* validate_cmd = app.add_subcommand("validate", "check a structure file's invariants");
  validate_cmd->add_option("file", validate_args.file, "structure file")->required();
  validate_cmd->add_flag("--json", validate_args.json, "machine-readable output");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula at one agent and time");
  eval_cmd->add_option("file", eval_args.file, "structure file")->required();
  eval_cmd->add_option("formula", eval_args.formula, "formula text, or @file")->required();
  eval_cmd->add_option("--agent", eval_args.agent, "agent id")->required();
  eval_cmd->add_option("--time", eval_args.time, "time point")->required();
  eval_cmd->add_flag("--json", eval_args.json, "machine-readable output");

  TableArgs table_args;
  auto* table_cmd = app.add_subcommand("table", "print a three-valued connective table");
  table_cmd->add_option("connective", table_args.connective, "not, and or or")->required();
  table_cmd->add_flag("--json", table_args.json, "machine-readable output");

  AnalyzeIcArgs ic_args;
  auto* ic_cmd = app.add_subcommand("analyze-ic",
                                    "which objects change imperceptibly for a property");
  ic_cmd->add_option("file", ic_args.file, "structure file")->required();
  ic_cmd->add_option("property", ic_args.property, "property template, or @file")->required();
  ic_cmd->add_option("--hole", ic_args.hole, "hole name in the template (default x)");
  ic_cmd->add_flag("--json", ic_args.json, "machine-readable output");

  GapsArgs gaps_args;
  auto* gaps_cmd = app.add_subcommand("gaps", "unwatched stretches between two watched times");
  gaps_cmd->add_option("file", gaps_args.file, "structure file")->required();
  gaps_cmd->add_option("object", gaps_args.object, "object name")->required();
  gaps_cmd->add_option("--agent", gaps_args.agent, "agent id")->required();
  gaps_cmd->add_option("--from", gaps_args.from, "watched start time")->required();
  gaps_cmd->add_option("--to", gaps_args.to, "watched end time")->required();
  gaps_cmd->add_flag("--json", gaps_args.json, "machine-readable output");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify",
                                        "check every change of view straddles a watching gap");
  verify_cmd->add_option("file", verify_args.file, "structure file")->required();
  verify_cmd->add_option("property", verify_args.property, "property template, or @file")->required();
  verify_cmd->add_option("--hole", verify_args.hole, "hole name in the template (default x)");
  verify_cmd->add_flag("--json", verify_args.json, "machine-readable output");

  ScenarioArgs scenario_args;
  auto* scenario_cmd = app.add_subcommand("scenario", "generate a sorites-style structure");
  auto* kind_opt = scenario_cmd->add_option("--kind", scenario_args.kind,
                                            "counter, heap, baldness or horizon");
  auto* threshold_opt = scenario_cmd->add_option("--threshold", scenario_args.threshold,
                                                 "magnitude where the predicate flips");
  auto* horizon_opt = scenario_cmd->add_option("--horizon", scenario_args.horizon,
                                               "last time point of the window");
  auto* offset_opt = scenario_cmd->add_option("--offset", scenario_args.offset,
                                              "magnitude at time 0");
  auto* seed_opt = scenario_cmd->add_option("--seed", scenario_args.seed,
                                            "seed for the random watch pattern");
  scenario_cmd->add_option("--watch", scenario_args.watch,
                           "watched times per agent, e.g. 0=0-3,7-9 (repeatable)");
  scenario_cmd->add_option("--spec", scenario_args.spec_file, "scenario spec file");
  scenario_cmd->add_option("--out", scenario_args.out_file, "write the structure here");
  scenario_cmd->add_flag("--json", scenario_args.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  scenario_args.kind_given = kind_opt->count() > 0;
  scenario_args.threshold_given = threshold_opt->count() > 0;
  scenario_args.horizon_given = horizon_opt->count() > 0;
  scenario_args.offset_given = offset_opt->count() > 0;
  scenario_args.seed_given = seed_opt->count() > 0;

  try {
    if (validate_cmd->parsed()) return run_validate(validate_args);
    if (eval_cmd->parsed()) return run_eval(eval_args);
    if (table_cmd->parsed()) return run_table(table_args);
    if (ic_cmd->parsed()) return run_analyze_ic(ic_args);
    if (gaps_cmd->parsed()) return run_gaps(gaps_args);
    if (verify_cmd->parsed()) return run_verify(verify_args);
    if (scenario_cmd->parsed()) return run_scenario(scenario_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // no subcommand (unreachable behind require_subcommand)
}
