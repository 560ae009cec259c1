#include <doctest.h>

#include <set>

#include "deon/testgen.hpp"
#include "support/run_cli.hpp"

using namespace deon;
using deon::testing::fixture_text;

namespace {

Scenario load(const char* name) { return parse_scenario(fixture_text(name)); }

// Operator counts for shape checks.
struct Counts {
  int believe_poss = 0, believe_nec = 0, poss = 0, forall = 0, lnot = 0, geq = 0;
};

void count_ops(const FormulaPtr& f, Counts& c) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FNot>) {
          ++c.lnot;
          count_ops(x.f, c);
        } else if constexpr (std::is_same_v<T, FAnd> || std::is_same_v<T, FOr>) {
          for (const FormulaPtr& p : x.parts) count_ops(p, c);
        } else if constexpr (std::is_same_v<T, FImplies>) {
          count_ops(x.lhs, c);
          count_ops(x.rhs, c);
        } else if constexpr (std::is_same_v<T, FPoss>) {
          ++c.poss;
          count_ops(x.f, c);
        } else if constexpr (std::is_same_v<T, FBelievePoss>) {
          ++c.believe_poss;
          count_ops(x.f, c);
        } else if constexpr (std::is_same_v<T, FBelieveNec>) {
          ++c.believe_nec;
          count_ops(x.f, c);
        } else if constexpr (std::is_same_v<T, FForAll>) {
          ++c.forall;
          count_ops(x.body, c);
        } else if constexpr (std::is_same_v<T, FGeq>) {
          ++c.geq;
        }
      },
      f->node());
}

}  // namespace

TEST_CASE("generalization proposition for the theft plan") {
  Scenario s = load("theft.deon");
  FormulaPtr f = gen_generalization(*s.find_plan("steal"));
  CHECK(canonical(f) ==
        "dia[a] P (forall x.(C1(x) & C2(x) -> A1(x)) & C1(a) & C2(a) & A1(a))");
  Counts c;
  count_ops(f, c);
  CHECK(c.believe_poss == 1);
  CHECK(c.poss == 1);
  CHECK(c.forall == 1);
  CHECK(free_vars(f).empty());
}

TEST_CASE("generalization proposition for the single-condition ambulance plan") {
  Scenario s = load("ambulance.deon");
  FormulaPtr f = gen_generalization(*s.find_plan("use_siren"));
  CHECK(canonical(f) == "dia[a] P (forall x.(C3(x) -> A2(x)) & C3(a) & A2(a))");
}

TEST_CASE("generalization keeps the plan's condition literals verbatim") {
  Scenario s = load("pedestrian.deon");
  const ActionPlan& p = *s.find_plan("no_brake");
  FormulaPtr f = gen_generalization(p);
  CHECK(canonical(f) ==
        "dia[a] P (forall x.(C10(x,b) & C11(x,c) -> ~A7(x)) & C10(a,b) & C11(a,c) & ~A7(a))");
  const FAnd* body = f->as<FBelievePoss>()->f->as<FPoss>()->f->as<FAnd>();
  REQUIRE(body);
  REQUIRE(body->parts.size() == p.conditions.size() + 2);
  for (size_t i = 0; i < p.conditions.size(); ++i)
    CHECK(body->parts[i + 1]->as<FLit>()->lit == p.conditions[i]);
  CHECK(body->parts.back()->as<FLit>()->lit == p.action);
}

TEST_CASE("fresh universal variable avoids the plan's constants") {
  ActionPlan p;
  p.id = "odd";
  p.agent = Term::constant("x");
  p.conditions = {Literal{Atom{"C1", {Term::constant("x")}}, false}};
  p.action = Literal{Atom{"A1", {Term::constant("x")}}, false};
  CHECK(fresh_universal_var(p) == "x1");
  FormulaPtr f = gen_generalization(p);
  CHECK(canonical(f) == "dia[x] P (forall x1.(C1(x1) -> A1(x1)) & C1(x) & A1(x))");
}

TEST_CASE("utility proposition for the merge plans") {
  Scenario s = load("merge.deon");
  const ActionPlan& now = *s.find_plan("merge_now");
  FormulaPtr f = gen_utility(now, s.alternatives(now));
  CHECK(canonical(f) ==
        "dia[a] (E(merge_wait) -> u(C4(a),C5(a),A3(a)) >= u(C4(a),C5(a),A4(a)))");

  const ActionPlan& wait = *s.find_plan("merge_wait");
  CHECK(canonical(gen_utility(wait, s.alternatives(wait))) ==
        "dia[a] (E(merge_now) -> u(C4(a),C5(a),A4(a)) >= u(C4(a),C5(a),A3(a)))");
}

TEST_CASE("utility proposition with no candidates is TRUE") {
  Scenario s = load("theft.deon");
  const ActionPlan& p = *s.find_plan("steal");
  FormulaPtr f = gen_utility(p, s.alternatives(p));
  CHECK(f->as<FTrue>());
  CHECK(canonical(f) == "TRUE");
}

TEST_CASE("utility proposition over two candidates conjoins two guarded comparisons") {
  Scenario s = load("merge.deon");
  const ActionPlan& now = *s.find_plan("merge_now");
  ActionPlan third = now;
  third.id = "merge_honk";
  third.action = Literal{Atom{"A3", {Term::constant("a")}}, true};
  Scenario extended = s;
  extended.plans.push_back(third);

  const ActionPlan& base = *extended.find_plan("merge_now");
  FormulaPtr f = gen_utility(base, extended.alternatives(base));
  const FBelievePoss* bp = f->as<FBelievePoss>();
  REQUIRE(bp);
  const FAnd* conj_node = bp->f->as<FAnd>();
  REQUIRE(conj_node);
  CHECK(conj_node->parts.size() == 2);
  for (const FormulaPtr& part : conj_node->parts) {
    const FImplies* imp = part->as<FImplies>();
    REQUIRE(imp);
    CHECK(imp->lhs->as<FLit>()->lit.atom.predicate == "E");
    CHECK(imp->rhs->as<FGeq>());
  }
}

TEST_CASE("autonomy proposition for the bus plans") {
  Scenario s = load("bus.deon");
  FormulaPtr f = gen_autonomy(*s.find_plan("pull_back"), *s.find_plan("cross"));
  CHECK(canonical(f) ==
        "dia[a] P (A6(a,b) & A5(b)) | ~box[a] P (C8(b) & C9(b) & C6(b) & C7(b) & ~C8(b))");
  Counts c;
  count_ops(f, c);
  CHECK(c.believe_poss == 1);
  CHECK(c.believe_nec == 1);
  CHECK(c.poss == 2);
  CHECK(c.lnot == 1);
  const FOr* top = f->as<FOr>();
  REQUIRE(top);
  CHECK(top->parts.size() == 2);
}

TEST_CASE("autonomy propositions for the pedestrian dilemma") {
  Scenario s = load("pedestrian.deon");
  CHECK(canonical(gen_autonomy(*s.find_plan("brake"), *s.find_plan("follow"))) ==
        "dia[a] P (A7(a) & A9(c)) | ~box[a] P (C10(a,b) & C11(a,c) & C13(c))");
  CHECK(canonical(gen_autonomy(*s.find_plan("no_brake"), *s.find_plan("ped_walk"))) ==
        "dia[a] P (~A7(a) & A8(b)) | ~box[a] P (C10(a,b) & C11(a,c) & C12(b))");
}

TEST_CASE("autonomy rejects same-agent pairs") {
  Scenario s = load("pedestrian.deon");
  CHECK_THROWS_AS(gen_autonomy(*s.find_plan("brake"), *s.find_plan("no_brake")),
                  std::invalid_argument);
}

TEST_CASE("mirrored autonomy tests swap the believer and keep the material") {
  Scenario s = load("bus.deon");
  FormulaPtr ab = gen_autonomy(*s.find_plan("pull_back"), *s.find_plan("cross"));
  FormulaPtr ba = gen_autonomy(*s.find_plan("cross"), *s.find_plan("pull_back"));
  CHECK(ab->as<FOr>()->parts[0]->as<FBelievePoss>()->agent.name == "a");
  CHECK(ba->as<FOr>()->parts[0]->as<FBelievePoss>()->agent.name == "b");

  auto literal_set = [](const FormulaPtr& f) {
    std::set<std::string> out;
    const FOr* top = f->as<FOr>();
    const FPoss* acts = top->parts[0]->as<FBelievePoss>()->f->as<FPoss>();
    for (const FormulaPtr& part : acts->f->as<FAnd>()->parts)
      out.insert(canonical(part->as<FLit>()->lit));
    const FNot* neg = top->parts[1]->as<FNot>();
    const FPoss* conds = neg->f->as<FBelieveNec>()->f->as<FPoss>();
    for (const FormulaPtr& part : conds->f->as<FAnd>()->parts)
      out.insert(canonical(part->as<FLit>()->lit));
    return out;
  };
  CHECK(literal_set(ab) == literal_set(ba));
}

TEST_CASE("generated propositions are closed for every fixture plan") {
  for (const char* name : {"theft.deon", "ambulance.deon", "merge.deon", "bus.deon",
                           "pedestrian.deon", "cycle.deon"}) {
    Scenario s = load(name);
    for (const ActionPlan& p : s.plans) {
      CHECK(free_vars(gen_generalization(p)).empty());
      CHECK(free_vars(gen_utility(p, s.alternatives(p))).empty());
      for (const ActionPlan* q : s.other_agent_plans(p))
        CHECK(free_vars(gen_autonomy(p, *q)).empty());
    }
  }
}
