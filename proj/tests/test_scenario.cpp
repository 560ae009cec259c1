#include <doctest.h>

#include "deon/scenario.hpp"
#include "support/run_cli.hpp"

using namespace deon;
using deon::testing::fixture_text;

TEST_CASE("theft fixture parses into one validated plan") {
  Scenario s = parse_scenario(fixture_text("theft.deon"));
  CHECK(s.name == "shoplifting");
  CHECK(s.facts.closed_world);
  REQUIRE(s.plans.size() == 1);
  const ActionPlan& p = s.plans[0];
  CHECK(p.id == "steal");
  CHECK(p.agent.name == "a");
  REQUIRE(p.conditions.size() == 2);
  CHECK(canonical(p.conditions[0]) == "C1(a)");
  CHECK(canonical(p.conditions[1]) == "C2(a)");
  CHECK(canonical(p.action) == "A1(a)");
  CHECK(s.facts.query(UnderminesKey{"steal", p.conditions[1]}) == Truth3::True);
  CHECK(s.facts.query(UnderminesKey{"steal", p.conditions[0]}) == Truth3::False);
}

TEST_CASE("pedestrian fixture has four plans and both fact kinds") {
  Scenario s = parse_scenario(fixture_text("pedestrian.deon"));
  REQUIRE(s.plans.size() == 4);
  CHECK(s.find_plan("brake"));
  CHECK(s.find_plan("no_brake"));
  CHECK(s.find_plan("ped_walk"));
  CHECK(s.find_plan("follow"));
  CHECK(s.find_plan("brake")->action.negated == false);
  CHECK(s.find_plan("no_brake")->action.negated == true);
  CHECK(s.facts.utility_of(s.find_plan("brake")->conditions, s.find_plan("brake")->action));
}

TEST_CASE("contradictory plan conditions are rejected") {
  const char* text = R"(scenario "bad"
agent b ""
predicate C8/1 ""
action A5/1 ""
plan p: b: C8(b) & ~C8(b) => A5(b)
)";
  CHECK_THROWS_WITH_AS(parse_scenario(text),
                       doctest::Contains("contradictory conditions"), ValidationError);
}

TEST_CASE("duplicate condition literals are rejected") {
  const char* text = R"(scenario "bad"
agent b ""
predicate C8/1 ""
action A5/1 ""
plan p: b: C8(b) & C8(b) => A5(b)
)";
  CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("duplicate condition"),
                       ValidationError);
}

TEST_CASE("undeclared symbols are named with their line") {
  const char* text = R"(scenario "bad"
agent b ""
action A5/1 ""
plan p: b: C9(b) => A5(b)
)";
  try {
    parse_scenario(text);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("C9") != std::string::npos);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("scenario-level validation errors") {
  const char* base = R"(scenario "bad"
agent b ""
predicate C8/1 ""
action A5/1 ""
plan p: b: C8(b) => A5(b)
)";
  SUBCASE("duplicate plan id") {
    std::string text = std::string(base) + "plan p: b: C8(b) => A5(b)\n";
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("duplicate plan id"),
                         ValidationError);
  }
  SUBCASE("undeclared agent in plan") {
    std::string text = std::string(base) + "plan q: z: C8(b) => A5(b)\n";
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("undeclared agent"),
                         ValidationError);
  }
  SUBCASE("agent must appear in the action literal") {
    std::string text = std::string(base) + "agent c \"\"\nplan q: c: C8(b) => A5(b)\n";
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("must appear"),
                         ValidationError);
  }
  SUBCASE("condition symbol used as action") {
    std::string text = std::string(base) + "plan q: b: A5(b) => A5(b)\n";
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("not a condition predicate"),
                         ValidationError);
  }
  SUBCASE("arity mismatch in plan literal") {
    std::string text = std::string(base) + "plan q: b: C8(b,b) => A5(b)\n";
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("arity"), ValidationError);
  }
  SUBCASE("utility outside [0,1]") {
    std::string text = std::string(base) + "fact u(C8(b),A5(b)) = 1.5\n";
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("outside [0,1]"),
                         ValidationError);
  }
  SUBCASE("unknown fact key") {
    std::string text = std::string(base) + "fact frobnicates(p) = true\n";
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("unrecognized fact key"),
                         ValidationError);
  }
  SUBCASE("undermines key referencing unknown plan") {
    std::string text = std::string(base) + "fact undermines(zzz,C8(b)) = true\n";
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("unknown plan"),
                         ValidationError);
  }
  SUBCASE("reserved words cannot be declared") {
    CHECK_THROWS_WITH_AS(parse_scenario("scenario \"x\"\nagent P \"\"\n"),
                         doctest::Contains("reserved"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_scenario("scenario \"x\"\npredicate E/1 \"\"\n"),
                         doctest::Contains("reserved"), ValidationError);
  }
  SUBCASE("missing scenario directive") {
    CHECK_THROWS_WITH_AS(parse_scenario("agent b \"\"\n"),
                         doctest::Contains("missing scenario"), ValidationError);
  }
  SUBCASE("contradictory dual overrides") {
    std::string text = std::string(base) +
                       "fact dia[b] P C8(b) = true\nfact box[b] ~(P C8(b)) = true\n";
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("contradicts the dual"),
                         ValidationError);
  }
  SUBCASE("override with undeclared agent") {
    std::string text = std::string(base) + "fact dia[zzz] P C8(b) = true\n";
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("undeclared agent"),
                         ValidationError);
  }
}

TEST_CASE("alternatives: same agent and same reasons, excluding the plan") {
  Scenario merge = parse_scenario(fixture_text("merge.deon"));
  auto alts = merge.alternatives(*merge.find_plan("merge_now"));
  REQUIRE(alts.size() == 1);
  CHECK(alts[0]->id == "merge_wait");

  Scenario theft = parse_scenario(fixture_text("theft.deon"));
  CHECK(theft.alternatives(*theft.find_plan("steal")).empty());

  Scenario ped = parse_scenario(fixture_text("pedestrian.deon"));
  auto brake_alts = ped.alternatives(*ped.find_plan("brake"));
  REQUIRE(brake_alts.size() == 1);
  CHECK(brake_alts[0]->id == "no_brake");
}

TEST_CASE("alternatives is symmetric on distinct plans") {
  Scenario s = parse_scenario(fixture_text("pedestrian.deon"));
  for (const ActionPlan& p : s.plans)
    for (const ActionPlan& q : s.plans) {
      if (p.id == q.id) continue;
      auto in = [](const std::vector<const ActionPlan*>& v, const std::string& id) {
        for (const ActionPlan* x : v)
          if (x->id == id) return true;
        return false;
      };
      CHECK(in(s.alternatives(p), q.id) == in(s.alternatives(q), p.id));
    }
}

TEST_CASE("parsing is deterministic") {
  std::string text = fixture_text("pedestrian.deon");
  Scenario a = parse_scenario(text);
  Scenario b = parse_scenario(text);
  REQUIRE(a.plans.size() == b.plans.size());
  for (size_t i = 0; i < a.plans.size(); ++i) {
    CHECK(a.plans[i].id == b.plans[i].id);
    CHECK(canonical(a.plans[i].action) == canonical(b.plans[i].action));
  }
  CHECK(a.facts.utilities() == b.facts.utilities());
}

TEST_CASE("fact keys normalize order") {
  // the fixture writes compatible(~A7(a),A8(b)); lookup in either order hits
  Scenario s = parse_scenario(fixture_text("pedestrian.deon"));
  Literal not_brake{Atom{"A7", {Term::constant("a")}}, true};
  Literal walk{Atom{"A8", {Term::constant("b")}}, false};
  CHECK(s.facts.query(CompatibleKey(not_brake, walk)) == Truth3::False);
  CHECK(s.facts.query(CompatibleKey(walk, not_brake)) == Truth3::False);
}

TEST_CASE("world mode can be overridden at load") {
  LoadOptions opts;
  opts.closed_world = false;
  Scenario s = parse_scenario(fixture_text("theft.deon"), opts);
  CHECK_FALSE(s.facts.closed_world);
}
