#include "deon/testgen.hpp"

#include <set>
#include <stdexcept>

namespace deon {

std::string to_string(Principle p) {
  switch (p) {
    case Principle::Generalization: return "generalization";
    case Principle::Utility: return "utility";
    default: return "autonomy";
  }
}

std::string fresh_universal_var(const ActionPlan& p) {
  std::set<std::string> taken;
  auto add = [&](const Literal& l) {
    for (const Term& t : l.atom.args) taken.insert(t.name);
  };
  for (const Literal& c : p.conditions) add(c);
  add(p.action);
  if (!taken.count("x")) return "x";
  for (int i = 1;; ++i) {
    std::string name = "x" + std::to_string(i);
    if (!taken.count(name)) return name;
  }
}

namespace {

// Replaces the plan's agent constant with `var` in one literal.
Literal generalize(const Literal& l, const Term& agent, const std::string& var) {
  Literal out = l;
  for (Term& arg : out.atom.args)
    if (arg == agent) arg = Term::variable(var);
  return out;
}

std::vector<FormulaPtr> condition_formulas(const ActionPlan& p) {
  std::vector<FormulaPtr> out;
  out.reserve(p.conditions.size());
  for (const Literal& c : p.conditions) out.push_back(lit(c));
  return out;
}

}  // namespace

FormulaPtr gen_generalization(const ActionPlan& p) {
  std::string var = fresh_universal_var(p);

  std::vector<FormulaPtr> univ_conds;
  univ_conds.reserve(p.conditions.size());
  for (const Literal& c : p.conditions) univ_conds.push_back(lit(generalize(c, p.agent, var)));
  FormulaPtr universal =
      forall(var, implies(conj(std::move(univ_conds)), lit(generalize(p.action, p.agent, var))));

  std::vector<FormulaPtr> body;
  body.push_back(std::move(universal));
  for (FormulaPtr& c : condition_formulas(p)) body.push_back(std::move(c));
  body.push_back(lit(p.action));
  return believe_poss(p.agent, poss(make(FAnd{std::move(body)})));
}

FormulaPtr gen_utility(const ActionPlan& p, const std::vector<const ActionPlan*>& candidates) {
  if (candidates.empty()) return truth();
  std::vector<FormulaPtr> clauses;
  clauses.reserve(candidates.size());
  for (const ActionPlan* q : candidates) {
    FormulaPtr guard = lit(Atom{"E", {Term::constant(q->id)}});
    FormulaPtr comparison = geq(UtilityExpr{p.conditions, p.action},
                                UtilityExpr{p.conditions, q->action});
    clauses.push_back(implies(std::move(guard), std::move(comparison)));
  }
  return believe_poss(p.agent, conj(std::move(clauses)));
}

FormulaPtr gen_autonomy(const ActionPlan& p, const ActionPlan& q) {
  if (p.agent == q.agent)
    throw std::invalid_argument("autonomy test is inter-agent: plans '" + p.id + "' and '" +
                                q.id + "' share agent " + p.agent.name);

  FormulaPtr actions_together =
      believe_poss(p.agent, poss(make(FAnd{{lit(p.action), lit(q.action)}})));

  std::vector<FormulaPtr> united;
  std::set<std::string> seen;
  auto push = [&](const Literal& l) {
    if (seen.insert(canonical(l)).second) united.push_back(lit(l));
  };
  for (const Literal& c : p.conditions) push(c);
  for (const Literal& c : q.conditions) push(c);

  FormulaPtr reasons_apart =
      lnot(believe_nec(p.agent, poss(conj(std::move(united)))));
  return make(FOr{{std::move(actions_together), std::move(reasons_apart)}});
}

}  // namespace deon
