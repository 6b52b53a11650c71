#pragma once

#include <optional>
#include <span>
#include <string>

#include "fluxlogic/formula.hpp"
#include "fluxlogic/structure.hpp"

namespace fluxlogic {

// Three-point truth scale; True is the designated value. The numeric order
// False < Unknown < True turns conjunction into min and disjunction into
// max, which is exactly the strong three-valued tables.
enum class TruthValue : unsigned char { False = 0, Unknown = 1, True = 2 };

char to_char(TruthValue value) noexcept;       // 'F', 'U', 'T'
std::string to_string(TruthValue value);
std::optional<TruthValue> truth_value_from_char(char c) noexcept;

constexpr TruthValue kleene_not(TruthValue v) noexcept {
  return static_cast<TruthValue>(2 - static_cast<unsigned char>(v));
}

constexpr TruthValue kleene_and(TruthValue v, TruthValue w) noexcept {
  return v < w ? v : w;
}

constexpr TruthValue kleene_or(TruthValue v, TruthValue w) noexcept {
  return v < w ? w : v;
}

// One evaluation point: an agent's view at one time in one structure.
// Construction checks that the agent exists; any time is allowed (times
// outside every domain are simply undefined everywhere).
class Context {
public:
  Context(const FluxingStructure& structure, const AgentId& agent, TimePoint time);

  const FluxingStructure& structure() const noexcept { return *structure_; }
  const AgentId& agent() const noexcept { return structure_->agents()[agent_index_]; }
  std::size_t agent_index() const noexcept { return agent_index_; }
  TimePoint time() const noexcept { return time_; }

private:
  const FluxingStructure* structure_;
  std::size_t agent_index_;
  TimePoint time_;
};

// The gap-tolerant satisfaction relation. An atom is supported only when
// every argument is defined here and the tuple is in the relation; a negated
// atom only when every argument is defined and the tuple is not. Negation of
// compound formulas is pushed inward (de Morgan, double negation). A formula
// and its negation can both fail to be supported — that is the whole point —
// but never both hold.
//
// The bound formula must have been bound against ctx.structure().
bool supports(const Context& ctx, const BoundFormula& formula);

// Truth value induced by the satisfaction relation: True when the formula is
// supported, False when its negation is, Unknown when neither. Throws
// std::logic_error if both sides claim support — that would mean the
// satisfaction relation itself is broken, and must never be reachable.
TruthValue valuation(const Context& ctx, const BoundFormula& formula);

// Truth value computed compositionally from atom values with the three-valued
// connective tables. Provably equal to valuation() everywhere; kept separate
// so tests can cross-check the two routes.
TruthValue compose_valuation(const Context& ctx, const BoundFormula& formula);

// Sweeps every agent and every time 0..evaluation_horizon() checking that no
// formula is supported together with its negation. Reports counterexamples
// as data (rule "soundness") instead of throwing, with agent, time and the
// formula in the description.
ValidationReport check_soundness(const FluxingStructure& structure,
                                 std::span<const BoundFormula> formulas);

enum class Connective { Not, And, Or };

// Fixed-layout ASCII truth table for one connective, suitable for printing.
std::string truth_table(Connective connective);

}  // namespace fluxlogic
