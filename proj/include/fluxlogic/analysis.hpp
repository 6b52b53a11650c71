#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fluxlogic/formula.hpp"
#include "fluxlogic/interval.hpp"
#include "fluxlogic/semantics.hpp"
#include "fluxlogic/structure.hpp"

namespace fluxlogic {

// A one-object property: a formula template with a distinguished hole name.
// Instantiating plugs an object name into every occurrence of the hole;
// other argument names refer to fixed objects as usual.
class PropertySlot {
public:
  // The hole must occur somewhere among the template's atom arguments.
  explicit PropertySlot(Formula template_formula, ObjectName hole = "x");

  static PropertySlot parse_text(std::string_view text, ObjectName hole = "x");

  const Formula& template_formula() const noexcept { return template_; }
  const ObjectName& hole() const noexcept { return hole_; }

  Formula instantiate(const ObjectName& object) const;

private:
  Formula template_;
  ObjectName hole_;
};

struct IcCounterexample {
  AgentId agent;
  TimePoint time;  // property differs between time and time + 1

  bool operator==(const IcCounterexample&) const = default;
};

struct IcResult {
  bool ic = false;
  std::optional<IcCounterexample> counterexample;  // engaged exactly when !ic

  bool operator==(const IcResult&) const = default;
};

// Whether the object changes imperceptibly with respect to the property:
// at every pair of consecutive times where the object is defined for an
// agent, that agent's support for the property is the same on both sides.
// Quantifies over all declared agents.
IcResult is_ic(const FluxingStructure& structure, const ObjectName& object,
               const PropertySlot& property);

// A flip in an agent's view between two consecutively-watched times: the
// property is definitely true at one end and definitely false at the other.
struct ViewChange {
  AgentId agent;
  ObjectName object;
  TimePoint from_time = 0;
  TimePoint to_time = 0;
  TruthValue from_value = TruthValue::Unknown;
  TruthValue to_value = TruthValue::Unknown;

  bool operator==(const ViewChange&) const = default;
};

// All view changes between consecutive watched times, ascending. Pairs with
// an undetermined value at either end are not changes of view. Only
// consecutive pairs are reported: they generate all others (a flip between
// two distant watched times forces a flip between some consecutive pair
// in between).
std::vector<ViewChange> find_view_changes(const FluxingStructure& structure, const AgentId& agent,
                                          const ObjectName& object, const PropertySlot& property);

struct ViewChangeWithGaps {
  ViewChange change;
  GapReport gaps;

  bool operator==(const ViewChangeWithGaps&) const = default;
};

struct ExcludedObject {
  ObjectName object;
  IcCounterexample counterexample;

  bool operator==(const ExcludedObject&) const = default;
};

// Outcome of checking, over every imperceptibly-changing object and every
// agent, that each change of view straddles a watching gap. `violations`
// lists changes with no gap — there should never be one; a non-empty list
// means the implementation itself is broken, and the check reports rather
// than asserts so the claim stays falsifiable.
struct Prop33Report {
  std::vector<ObjectName> ic_objects_checked;
  std::vector<ExcludedObject> excluded;  // objects that do not change imperceptibly
  std::vector<ViewChangeWithGaps> view_changes;
  std::vector<ViewChange> violations;

  bool operator==(const Prop33Report&) const = default;
};

// The structure must validate; a structure with findings is a contract error.
Prop33Report verify_prop33(const FluxingStructure& structure, const PropertySlot& property);

// ---------------------------------------------------------------------------
// Scenario generation: sorites-style single-object structures.

// counter/heap: the unary predicate holds of magnitudes >= threshold (the
// count is "big", the collection is "a heap"). baldness/horizon: it holds of
// magnitudes < threshold (the head is "not bald", the ship is "near").
enum class ScenarioKind { Counter, Heap, Baldness, Horizon };

std::string to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_kind_from_string(std::string_view text);

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::Counter;
  std::uint64_t threshold = 0;
  TimePoint horizon = 0;  // last time point; the window is 0..horizon
  // Watched times per agent, each within 0..horizon. Empty map: a seeded
  // random pattern for a single agent "0".
  std::map<AgentId, std::vector<TimePoint>> watch_pattern;
  std::uint64_t offset = 0;  // magnitude at time 0
  std::uint64_t seed = 0;

  bool operator==(const ScenarioSpec&) const = default;
};

// Where the predicate flips inside the window, and per agent the unwatched
// gap that contains the flip (empty optional: the agent watches the flip, or
// the flip is outside the agent's watched span).
struct ThresholdCrossing {
  TimePoint time = 0;
  std::map<AgentId, std::optional<Interval>> gap_by_agent;

  bool operator==(const ThresholdCrossing&) const = default;
};

struct Scenario {
  FluxingStructure structure;
  // Engaged for ScenarioKind::Horizon when the flip lands inside the window.
  std::optional<ThresholdCrossing> crossing;
};

// Deterministic: equal specs produce identical scenarios. The object is
// named "f", the predicate "P"; magnitudes run offset..offset+horizon, shown
// at time t as the universe form for offset+t.
Scenario generate_scenario(const ScenarioSpec& spec);

}  // namespace fluxlogic
