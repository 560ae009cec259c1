#pragma once

#include <string>
#include <vector>

#include "deon/scenario.hpp"
#include "deon/testgen.hpp"

namespace deon {

enum class TraceSource { Fact, Override, Default, Syntactic, RecursionPresumption };

std::string to_string(TraceSource s);

struct TraceEntry {
  int depth = 0;
  std::string formula;  // canonical sub-formula or fact-key text
  TraceSource source = TraceSource::Fact;
  Truth3 value = Truth3::Unknown;
};

// "<depth>  <formula>  <source>  <value>", two-space separated.
std::string to_line(const TraceEntry& e);

using Trace = std::vector<TraceEntry>;

struct PrincipleResult {
  TestKind kind;
  FormulaPtr proposition;
  Truth3 value = Truth3::Unknown;
  Trace trace;
};

enum class Outcome { Ethical, Unethical, Indeterminate };

std::string to_string(Outcome o);
Outcome outcome_of(Truth3 v);

struct Verdict {
  std::string plan;
  std::vector<PrincipleResult> results;
  Outcome overall = Outcome::Indeterminate;
};

struct EngineParams {
  int max_depth = 8;
};

// Evaluates test propositions against a scenario's fact base under strong
// Kleene semantics. Modal atoms ground through, in order of precedence,
// direct overrides, the structural patterns produced by the generators
// (per-condition undermining for universalizability, action compatibility,
// condition copossibility with a syntactic-contradiction shortcut), the
// dia/box duality, and finally plain evaluation of the body.
//
// The availability atom E(plan) and the counterparty filter of the autonomy
// check recurse into other plans' ethicality; re-encountering a plan already
// under assessment (or exhausting the depth budget) is resolved by presuming
// in its favor, recorded in the trace as recursion-presumption.
class Evaluator {
 public:
  Evaluator(const Scenario& scenario, EngineParams params = {});

  // Generic evaluation of a closed formula (no plan context).
  Truth3 eval_formula(const FormulaPtr& f, Trace* trace = nullptr) const;

  PrincipleResult check_generalization(const ActionPlan& p) const;
  PrincipleResult check_utility(const ActionPlan& p) const;
  // Aggregate over all counterparties (TRUE proposition when none).
  PrincipleResult check_autonomy(const ActionPlan& p) const;

  Verdict check_plan(const ActionPlan& p) const;
  std::vector<Verdict> check_all() const;

 private:
  struct Ctx;

  Truth3 eval(const FormulaPtr& f, Ctx& ctx, int depth) const;
  Truth3 eval_believe_poss(const FormulaPtr& node, const FBelievePoss& x, Ctx& ctx,
                           int depth) const;
  Truth3 eval_believe_nec(const FormulaPtr& node, const FBelieveNec& x, Ctx& ctx,
                          int depth) const;
  Truth3 eval_geq(const FGeq& x, Ctx& ctx, int depth) const;
  Truth3 ground_availability(const std::string& plan_id, Ctx& ctx, int depth) const;

  Truth3 generalization_value(const ActionPlan& p, Ctx& ctx) const;
  Truth3 utility_value(const ActionPlan& p, Ctx& ctx) const;
  Truth3 autonomy_value(const ActionPlan& p, Ctx& ctx) const;
  // min of the three principle values with the recursion guards applied.
  Truth3 ethicality(const ActionPlan& q, Ctx& ctx) const;

  std::vector<PrincipleResult> autonomy_results(const ActionPlan& p, Ctx& ctx) const;

  const Scenario& s_;
  EngineParams params_;
};

}  // namespace deon
