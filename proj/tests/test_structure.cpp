#include <doctest.h>

#include "fluxlogic/errors.hpp"
#include "fluxlogic/structure.hpp"
#include "testutil.hpp"

using namespace fluxlogic;

namespace {

bool has_rule(const ValidationReport& report, const std::string& rule) {
  for (const Violation& v : report.violations)
    if (v.rule == rule) return true;
  return false;
}

const Violation& find_rule(const ValidationReport& report, const std::string& rule) {
  for (const Violation& v : report.violations)
    if (v.rule == rule) return v;
  throw std::logic_error("no violation with rule " + rule);
}

}  // namespace

TEST_SUITE("structure") {

TEST_CASE("a minimal healthy structure validates") {
  ClassicalStructure base;
  base.universe = {"a"};
  base.predicates = {{"P", 1, {{"a"}}}};
  FluxingObject f;
  f.name = "f";
  f.entries[{{"i"}, 0}] = "a";
  FluxingStructure structure(base, {"i"}, {f});
  ValidationReport report = validate(structure);
  CHECK(report.ok);
  CHECK(report.violations.empty());
}

TEST_CASE("two objects sharing a form anywhere in their ranges is a finding") {
  ClassicalStructure base;
  base.universe = {"a1", "a2", "a3", "b1"};
  base.predicates = {{"P", 1, {}}};
  FluxingObject f;
  f.name = "f";
  f.entries[{{"i"}, 0}] = "a1";
  f.entries[{{"i"}, 5}] = "a3";
  FluxingObject g;
  g.name = "g";
  g.entries[{{"i"}, 1}] = "b1";
  g.entries[{{"i"}, 9}] = "a3";  // same form, different time: still a clash
  FluxingStructure structure(base, {"i"}, {f, g});
  ValidationReport report = validate(structure);
  CHECK_FALSE(report.ok);
  REQUIRE(has_rule(report, "objects/disjoint-ranges"));
  const Violation& v = find_rule(report, "objects/disjoint-ranges");
  CHECK(v.names == std::vector<std::string>{"f", "g", "a3"});
  CHECK(v.description.find("'f'") != std::string::npos);
  CHECK(v.description.find("'g'") != std::string::npos);
}

TEST_CASE("two objects may show themselves to the same agent at the same time") {
  // Overlapping domains are explicitly fine; only overlapping ranges are not.
  ClassicalStructure base;
  base.universe = {"a", "b"};
  base.predicates = {{"P", 1, {}}};
  FluxingObject f;
  f.name = "f";
  f.entries[{{"i"}, 3}] = "a";
  FluxingObject g;
  g.name = "g";
  g.entries[{{"i"}, 3}] = "b";
  FluxingStructure structure(base, {"i"}, {f, g});
  CHECK(validate(structure).ok);
}

TEST_CASE("every kind of breach is reported under its rule id") {
  ClassicalStructure base;
  base.universe = {"a", "a", "b"};  // duplicate form
  Predicate p1{"P", 1, {{"a"}, {"a", "b"}, {"zz"}}};  // arity breach + unknown form
  Predicate p2{"P", 1, {}};                           // duplicate name
  Predicate p3{"Q", 0, {}};                           // nullary
  base.predicates = {p1, p2, p3};
  FluxingObject f;
  f.name = "f";
  f.entries[{{"ghost"}, 0}] = "nowhere";  // unknown agent + unknown form
  FluxingObject f2;
  f2.name = "f";  // duplicate object name
  FluxingStructure structure(base, {}, {f, f2});
  ValidationReport report = validate(structure);
  CHECK_FALSE(report.ok);
  for (const char* rule :
       {"universe/duplicate-form", "predicate/duplicate-name", "predicate/nullary",
        "predicate/arity", "predicate/unknown-form", "agents/empty", "object/duplicate-name",
        "object/unknown-form", "object/unknown-agent"})
    CHECK_MESSAGE(has_rule(report, rule), std::string("missing rule ") + rule);

  FluxingStructure dup_agents({{"x"}, {}}, {"i", "i"}, {});
  CHECK(has_rule(validate(dup_agents), "agents/duplicate-id"));
}

TEST_CASE("the arity rule names the offending tuple") {
  ClassicalStructure base;
  base.universe = {"a", "b"};
  base.predicates = {{"R", 2, {{"a", "b"}, {"a"}}}};
  FluxingStructure structure(base, {"i"}, {});
  ValidationReport report = validate(structure);
  const Violation& v = find_rule(report, "predicate/arity");
  CHECK(v.description.find("tuple #1") != std::string::npos);
  CHECK(v.description.find("declared arity is 2") != std::string::npos);
}

TEST_CASE("validation is pure and repeatable") {
  FluxingStructure structure = testutil::random_structure(11);
  ValidationReport first = validate(structure);
  ValidationReport second = validate(structure);
  CHECK(first == second);
  CHECK(first.ok);
}

TEST_CASE("the watching set matches the worked example") {
  FluxingStructure structure = testutil::counter5();
  CHECK(watching_set(structure, "f", "0") ==
        std::vector<TimePoint>{0, 1, 2, 3, 7, 8, 9});
}

TEST_CASE("an object watched at no time has an empty watching set") {
  ClassicalStructure base;
  base.universe = {"a"};
  base.predicates = {{"P", 1, {}}};
  FluxingObject f;
  f.name = "f";  // no entries at all
  FluxingStructure structure(base, {"i", "j"}, {f});
  CHECK(watching_set(structure, "f", "i").empty());
  CHECK(watching_set(structure, "f", "j").empty());
  CHECK(structure.evaluation_horizon() == 0);
}

TEST_CASE("a continuously watched object has a solid watching set") {
  ClassicalStructure base;
  base.universe = {"a"};
  base.predicates = {{"P", 1, {}}};
  FluxingObject f;
  f.name = "f";
  for (TimePoint t = 0; t <= 4; ++t) f.entries[{{"i"}, t}] = "a";
  FluxingStructure structure(base, {"i"}, {f});
  CHECK(watching_set(structure, "f", "i") == std::vector<TimePoint>{0, 1, 2, 3, 4});
}

TEST_CASE("watching set lookups reject unknown names") {
  FluxingStructure structure = testutil::counter5();
  CHECK_THROWS_AS(watching_set(structure, "ghost", "0"), lookup_error);
  CHECK_THROWS_AS(watching_set(structure, "f", "99"), lookup_error);
}

TEST_CASE("the watching set is exactly the domain projection") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    FluxingStructure structure = testutil::random_structure(seed);
    for (const FluxingObject& object : structure.objects()) {
      for (const AgentId& agent : structure.agents()) {
        std::vector<TimePoint> expected;
        for (const auto& [key, form] : object.entries)
          if (key.first == agent) expected.push_back(key.second);
        std::sort(expected.begin(), expected.end());
        CHECK(watching_set(structure, object.name, agent) == expected);
        // and the interned fast path agrees with the raw projection
        CHECK(structure.watch_times(*structure.object_index(object.name),
                                    *structure.agent_index(agent)) == expected);
      }
    }
  }
}

TEST_CASE("interned lookups answer like the raw data") {
  FluxingStructure structure = testutil::counter5();
  std::size_t f = *structure.object_index("f");
  std::size_t agent = *structure.agent_index("0");
  std::size_t p = *structure.predicate_index("P");

  auto at7 = structure.form_at(f, agent, 7);
  REQUIRE(at7.has_value());
  CHECK(structure.base().universe[*at7] == "7");
  CHECK_FALSE(structure.form_at(f, agent, 5).has_value());

  std::uint32_t seven = *at7;
  CHECK(structure.predicate_holds(p, std::span<const std::uint32_t>(&seven, 1)));
  std::uint32_t three = static_cast<std::uint32_t>(*structure.form_index("3"));
  CHECK_FALSE(structure.predicate_holds(p, std::span<const std::uint32_t>(&three, 1)));

  CHECK(structure.evaluation_horizon() == 10);  // last entry is t=9
  CHECK_FALSE(structure.object_index("ghost").has_value());
  CHECK_FALSE(structure.predicate_index("Q").has_value());
  CHECK_FALSE(structure.form_index("77").has_value());
}

}  // TEST_SUITE
