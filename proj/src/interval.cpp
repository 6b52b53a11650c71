#include "fluxlogic/interval.hpp"

#include <algorithm>
#include <sstream>

#include "fluxlogic/errors.hpp"

namespace fluxlogic {

std::string to_string(const Interval& interval) {
  std::ostringstream out;
  out << "[" << interval.lo << "," << interval.hi << "]";
  return out.str();
}

std::optional<std::size_t> CanonicalAnalysis::constituent_of(TimePoint t) const {
  auto it = std::upper_bound(intervals.begin(), intervals.end(), t,
                             [](TimePoint v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals.begin()) return std::nullopt;
  --it;
  if (!it->contains(t)) return std::nullopt;
  return static_cast<std::size_t>(it - intervals.begin());
}

CanonicalAnalysis canonical_analysis(std::span<const TimePoint> values) {
  std::vector<TimePoint> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  CanonicalAnalysis out;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[j] + 1) ++j;
    out.intervals.push_back({sorted[i], sorted[j]});
    i = j + 1;
  }
  return out;
}

namespace {

// Resolves the (object, agent) pair and checks the watched-endpoints
// precondition shared by the gap queries. Returns the watching set.
const std::vector<TimePoint>& checked_watch_times(const FluxingStructure& structure,
                                                  const ObjectName& object, const AgentId& agent,
                                                  TimePoint t, TimePoint s) {
  auto obj = structure.object_index(object);
  if (!obj) throw lookup_error("unknown object '" + object + "'");
  auto ag = structure.agent_index(agent);
  if (!ag) throw lookup_error("unknown agent '" + agent + "'");
  const std::vector<TimePoint>& watched = structure.watch_times(*obj, *ag);
  auto is_watched = [&](TimePoint v) {
    return std::binary_search(watched.begin(), watched.end(), v);
  };
  auto fail = [&](const std::string& what) {
    throw contract_error("gap query between t=" + std::to_string(t) + " and s=" +
                         std::to_string(s) + " on object '" + object + "' for agent '" + agent +
                         "': " + what);
  };
  if (!is_watched(t)) fail("t=" + std::to_string(t) + " is not a watched time");
  if (!is_watched(s)) fail("s=" + std::to_string(s) + " is not a watched time");
  if (!(t < s)) fail("t must be strictly before s");
  return watched;
}

}  // namespace

bool has_watching_gap(const FluxingStructure& structure, const ObjectName& object,
                      const AgentId& agent, TimePoint t, TimePoint s) {
  const std::vector<TimePoint>& watched = checked_watch_times(structure, object, agent, t, s);
  auto lo = std::lower_bound(watched.begin(), watched.end(), t);
  auto hi = std::lower_bound(watched.begin(), watched.end(), s);
  // No gap means every point of [t, s] is watched, i.e. the stretch from t
  // to s contains exactly s - t + 1 watched times.
  return static_cast<std::uint64_t>(hi - lo) != s - t;
}

GapReport locate_gaps(const FluxingStructure& structure, const ObjectName& object,
                      const AgentId& agent, TimePoint t, TimePoint s) {
  const std::vector<TimePoint>& watched = checked_watch_times(structure, object, agent, t, s);
  GapReport report;
  auto lo = std::lower_bound(watched.begin(), watched.end(), t);
  for (auto it = lo; *it != s; ++it) {
    TimePoint here = *it;
    TimePoint next = *(it + 1);
    if (next > here + 1) report.gaps.push_back({here + 1, next - 1});
  }
  return report;
}

}  // namespace fluxlogic
