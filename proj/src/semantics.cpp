#include "fluxlogic/semantics.hpp"

#include <sstream>
#include <stdexcept>

#include "fluxlogic/errors.hpp"

namespace fluxlogic {

char to_char(TruthValue value) noexcept {
  switch (value) {
    case TruthValue::False: return 'F';
    case TruthValue::Unknown: return 'U';
    case TruthValue::True: return 'T';
  }
  return '?';
}

std::string to_string(TruthValue value) { return std::string(1, to_char(value)); }

std::optional<TruthValue> truth_value_from_char(char c) noexcept {
  switch (c) {
    case 'F': return TruthValue::False;
    case 'U': return TruthValue::Unknown;
    case 'T': return TruthValue::True;
  }
  return std::nullopt;
}

Context::Context(const FluxingStructure& structure, const AgentId& agent, TimePoint time)
    : structure_(&structure), time_(time) {
  auto idx = structure.agent_index(agent);
  if (!idx) throw lookup_error("unknown agent '" + agent + "'");
  agent_index_ = *idx;
}

namespace {

void check_same_structure(const Context& ctx, const BoundFormula& formula) {
  if (&formula.structure() != &ctx.structure())
    throw contract_error("formula is bound to a different structure than the context");
}

// Atom support under a polarity: all arguments must be defined at the
// context's (agent, time); then membership for the positive case,
// non-membership for the negated one. Any undefined argument loses either way.
bool atom_supported(const Context& ctx, const CompiledAtom& atom, bool negated) {
  const FluxingStructure& structure = ctx.structure();
  std::uint32_t forms[16];
  std::vector<std::uint32_t> spill;
  std::uint32_t* slot = atom.objects.size() <= 16 ? forms : (spill.resize(atom.objects.size()), spill.data());
  for (std::size_t i = 0; i < atom.objects.size(); ++i) {
    auto form = structure.form_at(atom.objects[i], ctx.agent_index(), ctx.time());
    if (!form) return false;
    slot[i] = *form;
  }
  bool member = structure.predicate_holds(atom.predicate,
                                          std::span<const std::uint32_t>(slot, atom.objects.size()));
  return negated ? !member : member;
}

// One recursion over (node, polarity). The polarity flag carries negation
// down to the leaves: negated conjunctions split into negated disjuncts and
// vice versa, double negations cancel.
bool supported(const Context& ctx, const BoundFormula& formula, std::int32_t index, bool negated) {
  const CompiledNode& node = formula.nodes()[static_cast<std::size_t>(index)];
  switch (node.kind) {
    case Formula::Kind::Atom:
      return atom_supported(ctx, formula.atoms()[static_cast<std::size_t>(node.atom)], negated);
    case Formula::Kind::Not:
      return supported(ctx, formula, node.a, !negated);
    case Formula::Kind::And:
      if (negated)
        return supported(ctx, formula, node.a, true) || supported(ctx, formula, node.b, true);
      return supported(ctx, formula, node.a, false) && supported(ctx, formula, node.b, false);
    case Formula::Kind::Or:
      if (negated)
        return supported(ctx, formula, node.a, true) && supported(ctx, formula, node.b, true);
      return supported(ctx, formula, node.a, false) || supported(ctx, formula, node.b, false);
  }
  throw contract_error("corrupt compiled formula");  // unreachable
}

TruthValue atom_value(const Context& ctx, const CompiledAtom& atom) {
  const FluxingStructure& structure = ctx.structure();
  std::uint32_t forms[16];
  std::vector<std::uint32_t> spill;
  std::uint32_t* slot = atom.objects.size() <= 16 ? forms : (spill.resize(atom.objects.size()), spill.data());
  for (std::size_t i = 0; i < atom.objects.size(); ++i) {
    auto form = structure.form_at(atom.objects[i], ctx.agent_index(), ctx.time());
    if (!form) return TruthValue::Unknown;
    slot[i] = *form;
  }
  return structure.predicate_holds(atom.predicate,
                                   std::span<const std::uint32_t>(slot, atom.objects.size()))
             ? TruthValue::True
             : TruthValue::False;
}

TruthValue composed(const Context& ctx, const BoundFormula& formula, std::int32_t index) {
  const CompiledNode& node = formula.nodes()[static_cast<std::size_t>(index)];
  switch (node.kind) {
    case Formula::Kind::Atom:
      return atom_value(ctx, formula.atoms()[static_cast<std::size_t>(node.atom)]);
    case Formula::Kind::Not:
      return kleene_not(composed(ctx, formula, node.a));
    case Formula::Kind::And:
      return kleene_and(composed(ctx, formula, node.a), composed(ctx, formula, node.b));
    case Formula::Kind::Or:
      return kleene_or(composed(ctx, formula, node.a), composed(ctx, formula, node.b));
  }
  throw contract_error("corrupt compiled formula");  // unreachable
}

}  // namespace

bool supports(const Context& ctx, const BoundFormula& formula) {
  check_same_structure(ctx, formula);
  return supported(ctx, formula, static_cast<std::int32_t>(formula.nodes().size() - 1), false);
}

TruthValue valuation(const Context& ctx, const BoundFormula& formula) {
  check_same_structure(ctx, formula);
  std::int32_t root = static_cast<std::int32_t>(formula.nodes().size() - 1);
  bool pos = supported(ctx, formula, root, false);
  bool neg = supported(ctx, formula, root, true);
  if (pos && neg)
    throw std::logic_error(
        "satisfaction relation supported a formula and its negation at once; "
        "this is a bug in the evaluator");
  if (pos) return TruthValue::True;
  if (neg) return TruthValue::False;
  return TruthValue::Unknown;
}

TruthValue compose_valuation(const Context& ctx, const BoundFormula& formula) {
  check_same_structure(ctx, formula);
  return composed(ctx, formula, static_cast<std::int32_t>(formula.nodes().size() - 1));
}

ValidationReport check_soundness(const FluxingStructure& structure,
                                 std::span<const BoundFormula> formulas) {
  std::vector<Violation> out;
  for (const BoundFormula& formula : formulas)
    if (&formula.structure() != &structure)
      throw contract_error("formula is bound to a different structure than the one being checked");
  for (std::size_t a = 0; a < structure.agents().size(); ++a) {
    for (TimePoint t = 0;; ++t) {
      Context ctx(structure, structure.agents()[a], t);
      for (const BoundFormula& formula : formulas) {
        std::int32_t root = static_cast<std::int32_t>(formula.nodes().size() - 1);
        // Raw dual evaluation rather than valuation(): a counterexample here
        // must come back as a finding, not as a thrown invariant failure.
        if (supported(ctx, formula, root, false) && supported(ctx, formula, root, true)) {
          std::ostringstream msg;
          msg << "agent '" << structure.agents()[a] << "' at t=" << t << " supports both '"
              << to_string(formula.formula()) << "' and its negation";
          out.push_back({"soundness", msg.str(), {structure.agents()[a]}});
        }
      }
      if (t == structure.evaluation_horizon()) break;
    }
  }
  return make_report(std::move(out));
}

std::string truth_table(Connective connective) {
  static constexpr TruthValue kValues[3] = {TruthValue::True, TruthValue::Unknown,
                                            TruthValue::False};
  std::ostringstream out;
  if (connective == Connective::Not) {
    out << "! |\n--+--\n";
    for (TruthValue v : kValues) out << to_char(v) << " | " << to_char(kleene_not(v)) << "\n";
    return out.str();
  }
  char symbol = connective == Connective::And ? '&' : '|';
  out << symbol << " | T U F\n--+------\n";
  for (TruthValue row : kValues) {
    out << to_char(row) << " |";
    for (TruthValue col : kValues) {
      TruthValue cell = connective == Connective::And ? kleene_and(row, col) : kleene_or(row, col);
      out << ' ' << to_char(cell);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace fluxlogic
