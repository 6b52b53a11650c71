#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace fluxlogic {

// Object forms, predicate symbols, agents and objects are identified by
// strings at the API surface and interned to dense indices internally.
using FormId = std::string;
using PredicateName = std::string;
using AgentId = std::string;
using ObjectName = std::string;
using TimePoint = std::uint64_t;

// One n-ary relation interpreting a predicate symbol over the universe.
struct Predicate {
  PredicateName name;
  std::size_t arity = 1;
  std::vector<std::vector<FormId>> tuples;

  bool operator==(const Predicate&) const = default;
};

// The classical part: a finite universe of forms plus relations over it.
struct ClassicalStructure {
  std::vector<FormId> universe;
  std::vector<Predicate> predicates;

  bool operator==(const ClassicalStructure&) const = default;
};

// A fluxing object: a finite partial map (agent, time) -> form. The map key
// order (agent first, then time) makes per-agent traces contiguous and keeps
// serialization deterministic.
struct FluxingObject {
  ObjectName name;
  std::map<std::pair<AgentId, TimePoint>, FormId> entries;

  bool operator==(const FluxingObject&) const = default;
};

// One broken invariant, as data. `rule` is a stable machine-readable id,
// `names` the entities involved, `description` the human-readable account.
struct Violation {
  std::string rule;
  std::string description;
  std::vector<std::string> names;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  bool operator==(const ValidationReport&) const = default;
};

ValidationReport make_report(std::vector<Violation> violations);

namespace detail {

// Hash/equality over form-index tuples that also accept spans, so relation
// membership tests never have to materialize a temporary vector.
struct TupleHash {
  using is_transparent = void;
  std::size_t operator()(std::span<const std::uint32_t> tuple) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (std::uint32_t v : tuple) {
      h ^= v;
      h *= 1099511628211ULL;
    }
    return h;
  }
  std::size_t operator()(const std::vector<std::uint32_t>& tuple) const noexcept {
    return (*this)(std::span<const std::uint32_t>(tuple));
  }
};

struct TupleEq {
  using is_transparent = void;
  static bool eq(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) noexcept {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return false;
    return true;
  }
  bool operator()(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const noexcept {
    return eq(a, b);
  }
  bool operator()(const std::vector<std::uint32_t>& a, std::span<const std::uint32_t> b) const noexcept {
    return eq(a, b);
  }
  bool operator()(std::span<const std::uint32_t> a, const std::vector<std::uint32_t>& b) const noexcept {
    return eq(a, b);
  }
};

using TupleSet = std::unordered_set<std::vector<std::uint32_t>, TupleHash, TupleEq>;

}  // namespace detail

// A classical structure together with agents and fluxing objects. The raw
// data stays exactly as given (so validation can inspect anything, however
// broken); the constructor additionally builds interned lookup indexes and
// per-(object, agent) traces, skipping entries that do not resolve. The fast
// accessors are only meaningful once validate() reports ok.
//
// Instances are immutable after construction; concurrent reads are safe.
class FluxingStructure {
public:
  FluxingStructure(ClassicalStructure base, std::vector<AgentId> agents,
                   std::vector<FluxingObject> objects);

  const ClassicalStructure& base() const noexcept { return base_; }
  const std::vector<AgentId>& agents() const noexcept { return agents_; }
  const std::vector<FluxingObject>& objects() const noexcept { return objects_; }

  std::optional<std::size_t> form_index(const FormId& form) const;
  std::optional<std::size_t> agent_index(const AgentId& agent) const;
  std::optional<std::size_t> object_index(const ObjectName& object) const;
  std::optional<std::size_t> predicate_index(const PredicateName& predicate) const;

  const FluxingObject* find_object(const ObjectName& object) const;

  // Form shown by object #object to agent #agent at time t, as a universe
  // index; empty when the point is outside the object's domain.
  std::optional<std::uint32_t> form_at(std::size_t object, std::size_t agent,
                                       TimePoint t) const;

  // Whether the interpretation of predicate #predicate contains the tuple.
  bool predicate_holds(std::size_t predicate,
                       std::span<const std::uint32_t> forms) const;

  // Ascending times at which agent #agent watches object #object.
  const std::vector<TimePoint>& watch_times(std::size_t object,
                                            std::size_t agent) const;

  // One past the last defined time over all objects and agents (0 when no
  // object has any entry). Sweeps that run t = 0..evaluation_horizon()
  // inclusive are therefore guaranteed to hit at least one undefined point.
  TimePoint evaluation_horizon() const noexcept { return horizon_; }

  bool operator==(const FluxingStructure& other) const {
    return base_ == other.base_ && agents_ == other.agents_ && objects_ == other.objects_;
  }

private:
  struct Trace {
    std::vector<TimePoint> times;    // ascending
    std::vector<std::uint32_t> forms;  // parallel to times; UINT32_MAX = unresolvable form
  };

  ClassicalStructure base_;
  std::vector<AgentId> agents_;
  std::vector<FluxingObject> objects_;

  std::unordered_map<std::string, std::size_t> form_index_;
  std::unordered_map<std::string, std::size_t> agent_index_;
  std::unordered_map<std::string, std::size_t> object_index_;
  std::unordered_map<std::string, std::size_t> predicate_index_;
  std::vector<detail::TupleSet> tuple_sets_;  // one per predicate
  std::vector<Trace> traces_;                 // [object * agents_.size() + agent]
  TimePoint horizon_ = 0;
};

// Checks every structural invariant and reports all breaches as data. Never
// throws on bad data — garbage in, findings out. Two objects sharing a form
// anywhere in their ranges is a breach; two objects defined at the same
// (agent, time) is explicitly fine.
ValidationReport validate(const FluxingStructure& structure);

// The set of times at which `agent` watches `object`, ascending. Computed
// from the raw entries, so it is exact even on structures that do not
// validate. Unknown object or agent names are lookup errors.
std::vector<TimePoint> watching_set(const FluxingStructure& structure,
                                    const ObjectName& object,
                                    const AgentId& agent);

}  // namespace fluxlogic
