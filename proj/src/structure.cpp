#include "fluxlogic/structure.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fluxlogic/errors.hpp"

namespace fluxlogic {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

ValidationReport make_report(std::vector<Violation> violations) {
  ValidationReport report;
  report.ok = violations.empty();
  report.violations = std::move(violations);
  return report;
}

FluxingStructure::FluxingStructure(ClassicalStructure base, std::vector<AgentId> agents,
                                   std::vector<FluxingObject> objects)
    : base_(std::move(base)), agents_(std::move(agents)), objects_(std::move(objects)) {
  // First-wins interning: duplicate names are kept in the raw data for
  // validate() to report, but the indexes stay unambiguous.
  for (std::size_t i = 0; i < base_.universe.size(); ++i)
    form_index_.emplace(base_.universe[i], i);
  for (std::size_t i = 0; i < agents_.size(); ++i)
    agent_index_.emplace(agents_[i], i);
  for (std::size_t i = 0; i < objects_.size(); ++i)
    object_index_.emplace(objects_[i].name, i);
  for (std::size_t i = 0; i < base_.predicates.size(); ++i)
    predicate_index_.emplace(base_.predicates[i].name, i);

  tuple_sets_.resize(base_.predicates.size());
  for (std::size_t p = 0; p < base_.predicates.size(); ++p) {
    const Predicate& pred = base_.predicates[p];
    for (const auto& tuple : pred.tuples) {
      if (tuple.size() != pred.arity) continue;  // validate() reports it
      std::vector<std::uint32_t> interned;
      interned.reserve(tuple.size());
      bool resolvable = true;
      for (const FormId& form : tuple) {
        auto it = form_index_.find(form);
        if (it == form_index_.end()) {
          resolvable = false;  // validate() reports it
          break;
        }
        interned.push_back(static_cast<std::uint32_t>(it->second));
      }
      if (resolvable) tuple_sets_[p].insert(std::move(interned));
    }
  }

  traces_.resize(objects_.size() * std::max<std::size_t>(agents_.size(), 1));
  bool any_entry = false;
  TimePoint last = 0;
  for (std::size_t o = 0; o < objects_.size(); ++o) {
    for (const auto& [key, form] : objects_[o].entries) {
      const auto& [agent, t] = key;
      if (!any_entry || t > last) last = t;
      any_entry = true;
      auto agent_it = agent_index_.find(agent);
      if (agent_it == agent_index_.end()) continue;  // validate() reports it
      Trace& trace = traces_[o * agents_.size() + agent_it->second];
      trace.times.push_back(t);  // map order: per-agent times arrive ascending
      auto form_it = form_index_.find(form);
      trace.forms.push_back(form_it == form_index_.end()
                                ? UINT32_MAX
                                : static_cast<std::uint32_t>(form_it->second));
    }
  }
  horizon_ = any_entry ? last + 1 : 0;
}

std::optional<std::size_t> FluxingStructure::form_index(const FormId& form) const {
  auto it = form_index_.find(form);
  if (it == form_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FluxingStructure::agent_index(const AgentId& agent) const {
  auto it = agent_index_.find(agent);
  if (it == agent_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FluxingStructure::object_index(const ObjectName& object) const {
  auto it = object_index_.find(object);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FluxingStructure::predicate_index(const PredicateName& predicate) const {
  auto it = predicate_index_.find(predicate);
  if (it == predicate_index_.end()) return std::nullopt;
  return it->second;
}

const FluxingObject* FluxingStructure::find_object(const ObjectName& object) const {
  auto idx = object_index(object);
  return idx ? &objects_[*idx] : nullptr;
}

std::optional<std::uint32_t> FluxingStructure::form_at(std::size_t object, std::size_t agent,
                                                       TimePoint t) const {
  const Trace& trace = traces_[object * agents_.size() + agent];
  auto it = std::lower_bound(trace.times.begin(), trace.times.end(), t);
  if (it == trace.times.end() || *it != t) return std::nullopt;
  std::uint32_t form = trace.forms[static_cast<std::size_t>(it - trace.times.begin())];
  if (form == UINT32_MAX) return std::nullopt;
  return form;
}

bool FluxingStructure::predicate_holds(std::size_t predicate,
                                       std::span<const std::uint32_t> forms) const {
  const detail::TupleSet& tuples = tuple_sets_[predicate];
  return tuples.find(forms) != tuples.end();
}

const std::vector<TimePoint>& FluxingStructure::watch_times(std::size_t object,
                                                            std::size_t agent) const {
  return traces_[object * agents_.size() + agent].times;
}

ValidationReport validate(const FluxingStructure& structure) {
  std::vector<Violation> out;
  const ClassicalStructure& base = structure.base();

  {  // universe: no duplicate forms
    std::set<FormId> seen;
    for (const FormId& form : base.universe) {
      if (!seen.insert(form).second)
        out.push_back({"universe/duplicate-form",
                       "form '" + form + "' appears more than once in the universe",
                       {form}});
    }
  }

  {  // predicates: unique names, positive arity, well-formed tuples
    std::set<PredicateName> seen;
    std::set<FormId> universe(base.universe.begin(), base.universe.end());
    for (const Predicate& pred : base.predicates) {
      if (!seen.insert(pred.name).second)
        out.push_back({"predicate/duplicate-name",
                       "predicate '" + pred.name + "' is declared more than once",
                       {pred.name}});
      if (pred.arity == 0)
        out.push_back({"predicate/nullary",
                       "predicate '" + pred.name + "' has arity 0; predicates must take arguments",
                       {pred.name}});
      for (std::size_t i = 0; i < pred.tuples.size(); ++i) {
        const auto& tuple = pred.tuples[i];
        if (tuple.size() != pred.arity) {
          std::ostringstream msg;
          msg << "predicate '" << pred.name << "' tuple #" << i << " (" << join(tuple, ", ")
              << ") has " << tuple.size() << " entries, declared arity is " << pred.arity;
          out.push_back({"predicate/arity", msg.str(), {pred.name}});
        }
        for (const FormId& form : tuple) {
          if (!universe.count(form))
            out.push_back({"predicate/unknown-form",
                           "predicate '" + pred.name + "' tuple #" + std::to_string(i) +
                               " mentions form '" + form + "' which is not in the universe",
                           {pred.name, form}});
        }
      }
    }
  }

  {  // agents: nonempty, unique
    if (structure.agents().empty())
      out.push_back({"agents/empty", "the agent list is empty; at least one agent is required", {}});
    std::set<AgentId> seen;
    for (const AgentId& agent : structure.agents()) {
      if (!seen.insert(agent).second)
        out.push_back({"agents/duplicate-id",
                       "agent '" + agent + "' is declared more than once",
                       {agent}});
    }
  }

  {  // objects: unique names, resolvable entries
    std::set<ObjectName> seen;
    std::set<FormId> universe(base.universe.begin(), base.universe.end());
    std::set<AgentId> agents(structure.agents().begin(), structure.agents().end());
    for (const FluxingObject& object : structure.objects()) {
      if (!seen.insert(object.name).second)
        out.push_back({"object/duplicate-name",
                       "object '" + object.name + "' is declared more than once",
                       {object.name}});
      std::set<FormId> bad_forms;
      std::set<AgentId> bad_agents;
      for (const auto& [key, form] : object.entries) {
        if (!universe.count(form)) bad_forms.insert(form);
        if (!agents.count(key.first)) bad_agents.insert(key.first);
      }
      for (const FormId& form : bad_forms)
        out.push_back({"object/unknown-form",
                       "object '" + object.name + "' takes form '" + form +
                           "' which is not in the universe",
                       {object.name, form}});
      for (const AgentId& agent : bad_agents)
        out.push_back({"object/unknown-agent",
                       "object '" + object.name + "' has entries for agent '" + agent +
                           "' which is not declared",
                       {object.name, agent}});
    }
  }

  {  // objects: pairwise disjoint ranges (overlapping domains are fine)
    std::vector<std::set<FormId>> ranges(structure.objects().size());
    for (std::size_t o = 0; o < structure.objects().size(); ++o)
      for (const auto& [key, form] : structure.objects()[o].entries) ranges[o].insert(form);
    for (std::size_t a = 0; a < ranges.size(); ++a) {
      for (std::size_t b = a + 1; b < ranges.size(); ++b) {
        std::vector<FormId> shared;
        std::set_intersection(ranges[a].begin(), ranges[a].end(), ranges[b].begin(),
                              ranges[b].end(), std::back_inserter(shared));
        if (!shared.empty()) {
          const ObjectName& na = structure.objects()[a].name;
          const ObjectName& nb = structure.objects()[b].name;
          std::vector<std::string> names = {na, nb};
          names.insert(names.end(), shared.begin(), shared.end());
          out.push_back({"objects/disjoint-ranges",
                         "objects '" + na + "' and '" + nb + "' share form" +
                             (shared.size() > 1 ? "s" : "") + " " + join(shared, ", ") +
                             "; distinct objects must have disjoint ranges",
                         std::move(names)});
        }
      }
    }
  }

  return make_report(std::move(out));
}

std::vector<TimePoint> watching_set(const FluxingStructure& structure, const ObjectName& object,
                                    const AgentId& agent) {
  const FluxingObject* obj = structure.find_object(object);
  if (!obj) throw lookup_error("unknown object '" + object + "'");
  if (!structure.agent_index(agent)) throw lookup_error("unknown agent '" + agent + "'");
  std::vector<TimePoint> times;
  // Entries are keyed (agent, time), so one agent's block is contiguous and
  // already ascending in time.
  for (auto it = obj->entries.lower_bound({agent, 0});
       it != obj->entries.end() && it->first.first == agent; ++it)
    times.push_back(it->first.second);
  return times;
}

}  // namespace fluxlogic
