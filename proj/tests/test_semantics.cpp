#include <doctest.h>

#include <array>
#include <vector>

#include "fluxlogic/errors.hpp"
#include "fluxlogic/semantics.hpp"
#include "testutil.hpp"

using namespace fluxlogic;

namespace {

constexpr TruthValue T = TruthValue::True;
constexpr TruthValue U = TruthValue::Unknown;
constexpr TruthValue F = TruthValue::False;
constexpr std::array<TruthValue, 3> kAll{T, U, F};

// All formulas over the two-object fixture's atoms up to a depth.
std::vector<BoundFormula> bound_formulas(const FluxingStructure& structure, unsigned depth) {
  std::vector<Formula> atoms;
  for (const FluxingObject& object : structure.objects())
    atoms.push_back(Formula::atom("P", {object.name}));
  if (atoms.size() > 2) atoms.resize(2);
  FormulaEnumerator enumerator(std::move(atoms), depth);
  std::vector<BoundFormula> out;
  while (auto f = enumerator.next()) out.push_back(bind(*f, structure));
  return out;
}

}  // namespace

TEST_SUITE("semantics") {

TEST_CASE("the connective tables are exactly the published three-valued ones") {
  CHECK(kleene_not(T) == F);
  CHECK(kleene_not(U) == U);
  CHECK(kleene_not(F) == T);

  CHECK(kleene_and(T, T) == T);
  CHECK(kleene_and(T, U) == U);
  CHECK(kleene_and(T, F) == F);
  CHECK(kleene_and(U, T) == U);
  CHECK(kleene_and(U, U) == U);
  CHECK(kleene_and(U, F) == F);
  CHECK(kleene_and(F, T) == F);
  CHECK(kleene_and(F, U) == F);
  CHECK(kleene_and(F, F) == F);

  CHECK(kleene_or(T, T) == T);
  CHECK(kleene_or(T, U) == T);
  CHECK(kleene_or(T, F) == T);
  CHECK(kleene_or(U, T) == T);
  CHECK(kleene_or(U, U) == U);
  CHECK(kleene_or(U, F) == U);
  CHECK(kleene_or(F, T) == T);
  CHECK(kleene_or(F, U) == U);
  CHECK(kleene_or(F, F) == F);
}

TEST_CASE("conjunction and disjunction are commutative; negation is an involution") {
  for (TruthValue v : kAll) {
    CHECK(kleene_not(kleene_not(v)) == v);
    for (TruthValue w : kAll) {
      CHECK(kleene_and(v, w) == kleene_and(w, v));
      CHECK(kleene_or(v, w) == kleene_or(w, v));
      // de Morgan at the value level
      CHECK(kleene_not(kleene_and(v, w)) == kleene_or(kleene_not(v), kleene_not(w)));
    }
  }
}

TEST_CASE("truth value naming") {
  CHECK(to_char(T) == 'T');
  CHECK(to_char(U) == 'U');
  CHECK(to_char(F) == 'F');
  CHECK(to_string(U) == "U");
  CHECK(truth_value_from_char('T') == T);
  CHECK(truth_value_from_char('U') == U);
  CHECK(truth_value_from_char('F') == F);
  CHECK_FALSE(truth_value_from_char('X').has_value());
}

TEST_CASE("truth tables render in the pinned layout") {
  CHECK(truth_table(Connective::And) ==
        "& | T U F\n"
        "--+------\n"
        "T | T U F\n"
        "U | U U F\n"
        "F | F F F\n");
  CHECK(truth_table(Connective::Or) ==
        "| | T U F\n"
        "--+------\n"
        "T | T T T\n"
        "U | T U U\n"
        "F | T U F\n");
  CHECK(truth_table(Connective::Not) ==
        "! |\n"
        "--+--\n"
        "T | F\n"
        "U | U\n"
        "F | T\n");
}

TEST_CASE("atom support needs a defined argument and the right membership") {
  FluxingStructure structure = testutil::counter5();
  BoundFormula p = bind(parse("P(f)"), structure);
  BoundFormula not_p = bind(parse("!P(f)"), structure);

  Context at7(structure, "0", 7);
  CHECK(supports(at7, p));
  CHECK_FALSE(supports(at7, not_p));

  Context at3(structure, "0", 3);
  CHECK_FALSE(supports(at3, p));
  CHECK(supports(at3, not_p));

  Context at5(structure, "0", 5);  // unwatched: neither side is supported
  CHECK_FALSE(supports(at5, p));
  CHECK_FALSE(supports(at5, not_p));
}

TEST_CASE("one undefined argument makes a whole atom undetermined") {
  ClassicalStructure base;
  base.universe = {"a", "b"};
  base.predicates = {{"R", 2, {{"a", "b"}}}};
  FluxingObject f;
  f.name = "f";
  f.entries[{{"i"}, 0}] = "a";
  f.entries[{{"i"}, 1}] = "a";
  FluxingObject g;
  g.name = "g";
  g.entries[{{"i"}, 0}] = "b";  // undefined at t=1
  FluxingStructure structure(base, {"i"}, {f, g});

  BoundFormula r = bind(parse("R(f, g)"), structure);
  CHECK(valuation(Context(structure, "i", 0), r) == T);
  CHECK(valuation(Context(structure, "i", 1), r) == U);
  CHECK(valuation(Context(structure, "i", 2), r) == U);

  BoundFormula swapped = bind(parse("R(g, f)"), structure);
  CHECK(valuation(Context(structure, "i", 0), swapped) == F);
}

TEST_CASE("the worked example's valuations") {
  FluxingStructure structure = testutil::counter5();
  BoundFormula p = bind(parse("P(f)"), structure);
  CHECK(valuation(Context(structure, "0", 3), p) == F);
  CHECK(valuation(Context(structure, "0", 5), p) == U);
  CHECK(valuation(Context(structure, "0", 7), p) == T);

  BoundFormula not_p = bind(parse("!P(f)"), structure);
  CHECK(valuation(Context(structure, "0", 3), not_p) == T);
  CHECK(valuation(Context(structure, "0", 5), not_p) == U);
  CHECK(valuation(Context(structure, "0", 7), not_p) == F);
}

TEST_CASE("negation pushes through compounds the way the satisfaction clauses say") {
  for (TruthValue pf : kAll) {
    for (TruthValue pg : kAll) {
      FluxingStructure structure = testutil::realize_pair(pf, pg);
      Context ctx(structure, "0", 0);
      Formula phi = parse("P(f)");
      Formula psi = parse("P(g)");

      auto holds = [&](const Formula& f) { return supports(ctx, bind(f, structure)); };

      // grounding: the fixture realizes the intended atom values
      CHECK(valuation(ctx, bind(phi, structure)) == pf);
      CHECK(valuation(ctx, bind(psi, structure)) == pg);

      Formula both = Formula::conjunction(phi, psi);
      Formula either = Formula::disjunction(phi, psi);
      CHECK(holds(Formula::negation(both)) ==
            holds(Formula::disjunction(Formula::negation(phi), Formula::negation(psi))));
      CHECK(holds(Formula::negation(either)) ==
            holds(Formula::conjunction(Formula::negation(phi), Formula::negation(psi))));
      CHECK(holds(Formula::negation(Formula::negation(both))) == holds(both));
    }
  }
}

TEST_CASE("support agrees with a structural negation-normal-form rewrite") {
  // The production path carries polarity down one recursion; the oracle
  // rewrites the formula first and interprets the result naively.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    FluxingStructure structure = testutil::random_structure(seed);
    std::vector<Formula> atoms = testutil::unary_atoms(structure);
    if (atoms.size() > 2) atoms.resize(2);
    FormulaEnumerator enumerator(std::move(atoms), 2);
    std::vector<Formula> formulas;
    while (auto f = enumerator.next()) formulas.push_back(*f);

    for (const AgentId& agent : structure.agents()) {
      for (TimePoint t = 0; t <= structure.evaluation_horizon(); ++t) {
        Context ctx(structure, agent, t);
        for (const Formula& f : formulas) {
          BoundFormula bound = bind(f, structure);
          CHECK(supports(ctx, bound) == testutil::oracle_supports(structure, agent, t, f));
          CHECK(supports(ctx, bind(Formula::negation(f), structure)) ==
                testutil::oracle_supports_negation(structure, agent, t, f));
        }
      }
    }
  }
}

TEST_CASE("the valuation and the compositional route agree everywhere") {
  for (TruthValue pf : kAll) {
    for (TruthValue pg : kAll) {
      FluxingStructure structure = testutil::realize_pair(pf, pg);
      Context ctx(structure, "0", 0);
      for (const BoundFormula& formula : bound_formulas(structure, 2))
        CHECK(valuation(ctx, formula) == compose_valuation(ctx, formula));
    }
  }
  for (std::uint64_t seed = 40; seed < 70; ++seed) {
    FluxingStructure structure = testutil::random_structure(seed);
    std::vector<BoundFormula> formulas = bound_formulas(structure, 2);
    for (const AgentId& agent : structure.agents()) {
      for (TimePoint t = 0; t <= structure.evaluation_horizon(); ++t) {
        Context ctx(structure, agent, t);
        for (const BoundFormula& formula : formulas)
          CHECK(valuation(ctx, formula) == compose_valuation(ctx, formula));
      }
    }
  }
}

TEST_CASE("no formula is ever supported together with its negation") {
  FluxingStructure counter = testutil::counter5();
  std::vector<BoundFormula> formulas = bound_formulas(counter, 2);
  CHECK(check_soundness(counter, formulas).ok);

  for (std::uint64_t seed = 500; seed < 600; ++seed) {
    FluxingStructure structure = testutil::random_structure(seed);
    ValidationReport report = check_soundness(structure, bound_formulas(structure, 2));
    CHECK(report.ok);
    CHECK(report.violations.empty());
  }
}

TEST_CASE("an empty formula list checks soundly") {
  FluxingStructure structure = testutil::counter5();
  CHECK(check_soundness(structure, {}).ok);
}

TEST_CASE("sweeping to the horizon always finds an undetermined point") {
  // The horizon is one past the last defined time, so the atom over each
  // object is undetermined there for every agent.
  for (std::uint64_t seed = 700; seed < 750; ++seed) {
    FluxingStructure structure = testutil::random_structure(seed);
    BoundFormula p = bind(Formula::atom("P", {structure.objects().front().name}), structure);
    Context ctx(structure, structure.agents().front(), structure.evaluation_horizon());
    CHECK(valuation(ctx, p) == U);
  }
}

TEST_CASE("total structures restrict to classical two-valued logic") {
  // Objects defined at every time in the window: no undetermined values, and
  // the three-valued machinery collapses onto a plain classical evaluator.
  ClassicalStructure base;
  base.universe = {"a0", "a1", "b0", "b1"};
  base.predicates = {{"P", 1, {{"a1"}, {"b0"}}}};
  FluxingObject f;
  f.name = "f";
  FluxingObject g;
  g.name = "g";
  const TimePoint horizon = 3;
  for (const AgentId& agent : {std::string("i"), std::string("j")}) {
    for (TimePoint t = 0; t <= horizon; ++t) {
      f.entries[{agent, t}] = t % 2 ? "a1" : "a0";
      g.entries[{agent, t}] = (t + 1) % 2 ? "b1" : "b0";
    }
  }
  FluxingStructure structure(base, {"i", "j"}, {f, g});

  std::vector<Formula> atoms{Formula::atom("P", {"f"}), Formula::atom("P", {"g"})};
  FormulaEnumerator enumerator(std::move(atoms), 2);
  while (auto formula = enumerator.next()) {
    BoundFormula bound = bind(*formula, structure);
    for (const AgentId& agent : structure.agents()) {
      for (TimePoint t = 0; t <= horizon; ++t) {
        Context ctx(structure, agent, t);
        TruthValue value = valuation(ctx, bound);
        CHECK(value != U);
        CHECK((value == T) == testutil::classical_eval(structure, agent, t, *formula));
      }
    }
  }
}

TEST_CASE("contexts check their inputs") {
  FluxingStructure structure = testutil::counter5();
  CHECK_THROWS_AS(Context(structure, "nobody", 0), lookup_error);

  Context ctx(structure, "0", 0);
  CHECK(ctx.agent() == "0");
  CHECK(ctx.time() == 0);

  FluxingStructure other = testutil::counter5();
  BoundFormula foreign = bind(parse("P(f)"), other);
  CHECK_THROWS_AS(supports(ctx, foreign), contract_error);
  CHECK_THROWS_AS(valuation(ctx, foreign), contract_error);
  CHECK_THROWS_AS(compose_valuation(ctx, foreign), contract_error);
  CHECK_THROWS_AS(check_soundness(structure, std::vector<BoundFormula>{foreign}),
                  contract_error);
}

}  // TEST_SUITE
