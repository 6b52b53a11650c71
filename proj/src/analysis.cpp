#include "fluxlogic/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "fluxlogic/errors.hpp"
#include "fluxlogic/rng.hpp"

namespace fluxlogic {

namespace {

unsigned count_hole_occurrences(const Formula& f, const ObjectName& hole) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      unsigned n = 0;
      for (const ObjectName& arg : f.args())
        if (arg == hole) ++n;
      return n;
    }
    case Formula::Kind::Not:
      return count_hole_occurrences(f.operand(), hole);
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return count_hole_occurrences(f.left(), hole) + count_hole_occurrences(f.right(), hole);
  }
  return 0;  // unreachable
}

Formula substitute(const Formula& f, const ObjectName& hole, const ObjectName& object) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<ObjectName> args = f.args();
      for (ObjectName& arg : args)
        if (arg == hole) arg = object;
      return Formula::atom(f.predicate(), std::move(args));
    }
    case Formula::Kind::Not:
      return Formula::negation(substitute(f.operand(), hole, object));
    case Formula::Kind::And:
      return Formula::conjunction(substitute(f.left(), hole, object),
                                  substitute(f.right(), hole, object));
    case Formula::Kind::Or:
      return Formula::disjunction(substitute(f.left(), hole, object),
                                  substitute(f.right(), hole, object));
  }
  throw contract_error("corrupt formula node");  // unreachable
}

}  // namespace

PropertySlot::PropertySlot(Formula template_formula, ObjectName hole)
    : template_(std::move(template_formula)), hole_(std::move(hole)) {
  if (count_hole_occurrences(template_, hole_) == 0)
    throw std::invalid_argument("property template never mentions the hole '" + hole_ + "'");
}

PropertySlot PropertySlot::parse_text(std::string_view text, ObjectName hole) {
  return PropertySlot(parse(text), std::move(hole));
}

Formula PropertySlot::instantiate(const ObjectName& object) const {
  return substitute(template_, hole_, object);
}

IcResult is_ic(const FluxingStructure& structure, const ObjectName& object,
               const PropertySlot& property) {
  auto obj = structure.object_index(object);
  if (!obj) throw lookup_error("unknown object '" + object + "'");
  BoundFormula bound = bind(property.instantiate(object), structure);
  for (std::size_t a = 0; a < structure.agents().size(); ++a) {
    const std::vector<TimePoint>& times = structure.watch_times(*obj, a);
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
      if (times[k + 1] != times[k] + 1) continue;
      Context before(structure, structure.agents()[a], times[k]);
      Context after(structure, structure.agents()[a], times[k] + 1);
      if (supports(before, bound) != supports(after, bound))
        return {false, IcCounterexample{structure.agents()[a], times[k]}};
    }
  }
  return {true, std::nullopt};
}

std::vector<ViewChange> find_view_changes(const FluxingStructure& structure, const AgentId& agent,
                                          const ObjectName& object, const PropertySlot& property) {
  auto obj = structure.object_index(object);
  if (!obj) throw lookup_error("unknown object '" + object + "'");
  auto ag = structure.agent_index(agent);
  if (!ag) throw lookup_error("unknown agent '" + agent + "'");
  BoundFormula bound = bind(property.instantiate(object), structure);
  const std::vector<TimePoint>& times = structure.watch_times(*obj, *ag);

  std::vector<ViewChange> out;
  if (times.empty()) return out;
  TruthValue prev = valuation(Context(structure, agent, times[0]), bound);
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    TruthValue next = valuation(Context(structure, agent, times[k + 1]), bound);
    bool flip = (prev == TruthValue::True && next == TruthValue::False) ||
                (prev == TruthValue::False && next == TruthValue::True);
    if (flip) out.push_back({agent, object, times[k], times[k + 1], prev, next});
    prev = next;
  }
  return out;
}

Prop33Report verify_prop33(const FluxingStructure& structure, const PropertySlot& property) {
  ValidationReport health = validate(structure);
  if (!health.ok)
    throw contract_error("structure does not validate (" +
                         std::to_string(health.violations.size()) +
                         " finding(s)); fix those before running the necessity check");

  Prop33Report out;
  for (const FluxingObject& object : structure.objects()) {
    IcResult ic = is_ic(structure, object.name, property);
    if (!ic.ic) {
      out.excluded.push_back({object.name, *ic.counterexample});
      continue;
    }
    out.ic_objects_checked.push_back(object.name);
    for (const AgentId& agent : structure.agents()) {
      for (ViewChange& change : find_view_changes(structure, agent, object.name, property)) {
        GapReport gaps = locate_gaps(structure, object.name, agent, change.from_time,
                                     change.to_time);
        if (gaps.empty()) out.violations.push_back(change);
        out.view_changes.push_back({std::move(change), std::move(gaps)});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scenarios

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Counter: return "counter";
    case ScenarioKind::Heap: return "heap";
    case ScenarioKind::Baldness: return "baldness";
    case ScenarioKind::Horizon: return "horizon";
  }
  return "?";
}

std::optional<ScenarioKind> scenario_kind_from_string(std::string_view text) {
  if (text == "counter") return ScenarioKind::Counter;
  if (text == "heap") return ScenarioKind::Heap;
  if (text == "baldness") return ScenarioKind::Baldness;
  if (text == "horizon") return ScenarioKind::Horizon;
  return std::nullopt;
}

Scenario generate_scenario(const ScenarioSpec& spec) {
  if (spec.horizon > 1'000'000)
    throw std::invalid_argument("scenario horizon " + std::to_string(spec.horizon) +
                                " is unreasonably large");

  std::map<AgentId, std::vector<TimePoint>> pattern = spec.watch_pattern;
  for (auto& [agent, times] : pattern) {
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    if (!times.empty() && times.back() > spec.horizon)
      throw std::invalid_argument("watch pattern for agent '" + agent + "' mentions t=" +
                                  std::to_string(times.back()) + " beyond horizon " +
                                  std::to_string(spec.horizon));
  }
  if (pattern.empty()) {
    // Seeded random pattern for a single agent; roughly two thirds of the
    // window watched, so both runs and gaps are common.
    SplitMix64 rng(spec.seed ^ 0x5CE9A210F1ULL);
    std::vector<TimePoint> times;
    for (TimePoint t = 0; t <= spec.horizon; ++t)
      if (rng.chance(2, 3)) times.push_back(t);
    if (times.empty()) times.push_back(spec.horizon / 2);  // never leave the agent blind
    pattern.emplace("0", std::move(times));
  }

  auto form_of = [&](std::uint64_t magnitude) {
    // Baldness magnitudes are hair counts, not the displayed object, so give
    // their forms a distinct spelling.
    return spec.kind == ScenarioKind::Baldness ? "s" + std::to_string(magnitude)
                                               : std::to_string(magnitude);
  };
  const bool predicate_on_big =
      spec.kind == ScenarioKind::Counter || spec.kind == ScenarioKind::Heap;

  ClassicalStructure base;
  Predicate p;
  p.name = "P";
  p.arity = 1;
  for (std::uint64_t m = spec.offset; m <= spec.offset + spec.horizon; ++m) {
    base.universe.push_back(form_of(m));
    const bool big = m >= spec.threshold;
    if (predicate_on_big == big) p.tuples.push_back({form_of(m)});
  }
  base.predicates.push_back(std::move(p));

  FluxingObject f;
  f.name = "f";
  std::vector<AgentId> agents;
  for (const auto& [agent, times] : pattern) {
    agents.push_back(agent);
    for (TimePoint t : times) f.entries[{agent, t}] = form_of(spec.offset + t);
  }

  Scenario scenario{FluxingStructure(std::move(base), std::move(agents), {std::move(f)}),
                    std::nullopt};

  if (spec.kind == ScenarioKind::Horizon && spec.threshold > spec.offset &&
      spec.threshold <= spec.offset + spec.horizon) {
    ThresholdCrossing crossing;
    crossing.time = spec.threshold - spec.offset;
    for (const auto& [agent, times] : pattern) {
      std::optional<Interval> gap;
      auto it = std::lower_bound(times.begin(), times.end(), crossing.time);
      const bool watched = it != times.end() && *it == crossing.time;
      // A containing gap exists only when the flip is strictly between two
      // watched times and itself unwatched.
      if (!watched && it != times.begin() && it != times.end())
        gap = Interval{*(it - 1) + 1, *it - 1};
      crossing.gap_by_agent.emplace(agent, gap);
    }
    scenario.crossing = std::move(crossing);
  }
  return scenario;
}

}  // namespace fluxlogic
