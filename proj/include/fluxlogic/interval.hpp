#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fluxlogic/structure.hpp"

namespace fluxlogic {

// Closed interval [lo, hi] of time points; lo == hi is a one-point interval.
struct Interval {
  TimePoint lo = 0;
  TimePoint hi = 0;

  bool contains(TimePoint t) const noexcept { return lo <= t && t <= hi; }
  std::uint64_t length() const noexcept { return hi - lo + 1; }

  bool operator==(const Interval&) const = default;
};

std::string to_string(const Interval& interval);  // "[lo,hi]"

// The unique decomposition of a finite set of naturals into maximal runs of
// consecutive values: intervals are ascending and separated by at least one
// missing point, and their union is exactly the input set.
struct CanonicalAnalysis {
  std::vector<Interval> intervals;

  // Index of the constituent interval containing t, if any.
  std::optional<std::size_t> constituent_of(TimePoint t) const;

  bool operator==(const CanonicalAnalysis&) const = default;
};

// Accepts the set in any order, duplicates ignored.
CanonicalAnalysis canonical_analysis(std::span<const TimePoint> values);

// Maximal unwatched stretches strictly between two watched time points.
struct GapReport {
  std::vector<Interval> gaps;

  bool empty() const noexcept { return gaps.empty(); }

  bool operator==(const GapReport&) const = default;
};

// Whether agent's watching of `object` has a gap between t and s: some time
// strictly between them is unwatched. Preconditions (object and agent exist,
// both t and s are watched, t < s) are enforced — breaking them is a
// contract error, not a "no".
bool has_watching_gap(const FluxingStructure& structure, const ObjectName& object,
                      const AgentId& agent, TimePoint t, TimePoint s);

// All maximal unwatched intervals strictly between t and s, ascending. Same
// preconditions as has_watching_gap; the report is empty exactly when there
// is no gap.
GapReport locate_gaps(const FluxingStructure& structure, const ObjectName& object,
                      const AgentId& agent, TimePoint t, TimePoint s);

}  // namespace fluxlogic
