#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fluxlogic/structure.hpp"

namespace fluxlogic {

// Immutable propositional formula over atoms P(f1, ..., fn), with negation,
// conjunction and disjunction. Value type with shared structure: copies are
// cheap and never observable, since nodes are never mutated.
class Formula {
public:
  enum class Kind { Atom, Not, And, Or };

  static Formula atom(PredicateName predicate, std::vector<ObjectName> args);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula left, Formula right);
  static Formula disjunction(Formula left, Formula right);

  Kind kind() const noexcept;

  // Atom accessors (contract error on other kinds).
  const PredicateName& predicate() const;
  const std::vector<ObjectName>& args() const;

  // Negation accessor.
  const Formula& operand() const;

  // Binary-connective accessors.
  const Formula& left() const;
  const Formula& right() const;

  // Connective nesting depth; atoms have depth 0.
  unsigned depth() const noexcept;

  bool operator==(const Formula& other) const;  // structural equality
  bool operator!=(const Formula& other) const { return !(*this == other); }

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Concrete syntax: '!' negation, '&' conjunction, '|' disjunction,
// parentheses; '!' binds tightest, then '&', then '|'; '&' and '|' are
// left-associative. Identifiers are [A-Za-z0-9_]+. There is no implication
// connective; "->" is rejected with a dedicated message. Errors carry a
// 1-based position and the acceptable-next-token set.
Formula parse(std::string_view text);

// Minimal-parenthesis rendering; parse(to_string(f)) == f.
std::string to_string(const Formula& formula);

// The compiled form of a formula against one structure: atoms become interned
// predicate/object indices, connectives a flat child-indexed node array
// (root last). Exposed so evaluation can run without name lookups.
struct CompiledAtom {
  std::uint32_t predicate = 0;
  std::vector<std::uint32_t> objects;
};

struct CompiledNode {
  Formula::Kind kind = Formula::Kind::Atom;
  std::int32_t atom = -1;  // index into atoms(), Kind::Atom only
  std::int32_t a = -1;     // child node index (operand / left)
  std::int32_t b = -1;     // child node index (right)
};

// A formula that has been checked against a structure: every predicate
// exists with the right arity and every argument names an object.
class BoundFormula {
public:
  const Formula& formula() const noexcept { return formula_; }
  const FluxingStructure& structure() const noexcept { return *structure_; }
  const std::vector<CompiledNode>& nodes() const noexcept { return nodes_; }
  const std::vector<CompiledAtom>& atoms() const noexcept { return atoms_; }

private:
  friend BoundFormula bind(const Formula&, const FluxingStructure&);
  BoundFormula(Formula formula, const FluxingStructure* structure)
      : formula_(std::move(formula)), structure_(structure) {}

  Formula formula_;
  const FluxingStructure* structure_;  // non-owning; must outlive the binding
  std::vector<CompiledNode> nodes_;
  std::vector<CompiledAtom> atoms_;
};

// Throws bind_error (with the offending name, and "expected N, got M" for
// arity mismatches) when the formula does not fit the structure.
BoundFormula bind(const Formula& formula, const FluxingStructure& structure);

// Lazily enumerates every distinct formula over the given atoms up to a
// connective depth, in a fixed order: all atoms first, then depth 1, depth 2,
// ... Within one depth level: negations of the previous level's formulas,
// then conjunctions, then disjunctions of all shallower pairs whose deeper
// side has exactly the previous depth, left operand varying slowest. The
// atoms must be distinct Kind::Atom formulas.
class FormulaEnumerator {
public:
  FormulaEnumerator(std::vector<Formula> atoms, unsigned max_depth);

  // Next formula, or empty once the sequence is exhausted.
  std::optional<Formula> next();

private:
  void build_next_level();

  std::vector<Formula> pool_;   // everything produced so far, in order
  std::size_t level_begin_ = 0;  // start of the newest complete level in pool_
  unsigned built_depth_ = 0;
  unsigned max_depth_;
  std::size_t emit_pos_ = 0;
};

}  // namespace fluxlogic
