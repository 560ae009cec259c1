#include "deon/scenario.hpp"

#include <algorithm>

namespace deon {

ValidationError::ValidationError(std::string msg, int line_)
    : std::runtime_error(std::move(msg)), line(line_) {}

void Signature::declare(SymbolDecl decl) {
  if (index_.count(decl.name))
    throw ValidationError("symbol '" + decl.name + "' already declared");
  index_.emplace(decl.name, order_.size());
  order_.push_back(std::move(decl));
}

const SymbolDecl* Signature::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return nullptr;
  return &order_[it->second];
}

bool same_condition_set(const ActionPlan& a, const ActionPlan& b) {
  auto key = [](const ActionPlan& p) {
    std::vector<std::string> texts;
    texts.reserve(p.conditions.size());
    for (const Literal& l : p.conditions) texts.push_back(canonical(l));
    std::sort(texts.begin(), texts.end());
    return texts;
  };
  return key(a) == key(b);
}

bool Scenario::has_agent(std::string_view name) const {
  return std::find(agents.begin(), agents.end(), name) != agents.end();
}

const ActionPlan* Scenario::find_plan(std::string_view id) const {
  for (const ActionPlan& p : plans)
    if (p.id == id) return &p;
  return nullptr;
}

std::vector<const ActionPlan*> Scenario::alternatives(const ActionPlan& p) const {
  std::vector<const ActionPlan*> out;
  for (const ActionPlan& q : plans) {
    if (q.id == p.id) continue;
    if (q.agent == p.agent && same_condition_set(p, q)) out.push_back(&q);
  }
  return out;
}

std::vector<const ActionPlan*> Scenario::other_agent_plans(const ActionPlan& p) const {
  std::vector<const ActionPlan*> out;
  for (const ActionPlan& q : plans)
    if (!(q.agent == p.agent)) out.push_back(&q);
  return out;
}

}  // namespace deon
