#pragma once

#include <string>
#include <vector>

#include "deon/scenario.hpp"

namespace deon {

enum class Principle { Generalization, Utility, Autonomy };

std::string to_string(Principle p);

struct TestKind {
  Principle principle = Principle::Generalization;
  std::string counterparty;  // autonomy only: the other plan's id ("" = vacuous)
};

// Universalizability test: the agent can rationally believe it is possible
// that everyone adopts the same plan while the agent's reasons still apply
// and the agent acts.
//   dia[agent] P (forall x.(conds[agent:=x] -> action[agent:=x])
//                 & conds & action)
FormulaPtr gen_generalization(const ActionPlan& p);

// Comparative utility test over the candidate alternatives, each guarded by
// its availability atom E(plan-id). No candidates yields TRUE.
FormulaPtr gen_utility(const ActionPlan& p, const std::vector<const ActionPlan*>& candidates);

// Inter-agent consistency test:
//   dia[p.agent] P (p.action & q.action)
//   | ~box[p.agent] P (p.conditions union q.conditions)
// Throws std::invalid_argument when both plans belong to the same agent.
FormulaPtr gen_autonomy(const ActionPlan& p, const ActionPlan& q);

// The universally quantified variable used by gen_generalization: "x" unless
// a constant of that name occurs in the plan, then x1, x2, ...
std::string fresh_universal_var(const ActionPlan& p);

}  // namespace deon
