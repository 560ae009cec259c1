#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deon/facts.hpp"
#include "deon/formula.hpp"

namespace deon {

enum class SymbolKind { Condition, Action };

struct SymbolDecl {
  std::string name;
  int arity = 0;
  SymbolKind kind = SymbolKind::Condition;
  std::string doc;
};

// Predicate/action declarations of one scenario.
class Signature {
 public:
  void declare(SymbolDecl decl);  // throws ValidationError on redeclaration
  const SymbolDecl* find(std::string_view name) const;
  const std::vector<SymbolDecl>& symbols() const { return order_; }

 private:
  std::vector<SymbolDecl> order_;
  std::map<std::string, size_t, std::less<>> index_;
};

// A conditional commitment: when all condition literals hold, the agent
// takes the (possibly negated) action.
struct ActionPlan {
  std::string id;
  Term agent;                       // constant
  std::vector<Literal> conditions;  // nonempty conjunction, source order
  Literal action;
};

// Source-order-insensitive equality of condition lists.
bool same_condition_set(const ActionPlan& a, const ActionPlan& b);

class Scenario {
 public:
  std::string name;
  std::vector<std::string> agents;  // declaration order
  Signature signature;
  std::vector<ActionPlan> plans;
  FactBase facts;

  bool has_agent(std::string_view name) const;
  const ActionPlan* find_plan(std::string_view id) const;

  // Plans of the same agent whose condition set equals p's, excluding p.
  std::vector<const ActionPlan*> alternatives(const ActionPlan& p) const;

  // Other-agent plans in declaration order.
  std::vector<const ActionPlan*> other_agent_plans(const ActionPlan& p) const;
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(std::string msg, int line = 0);
  int line;
};

// Parses and fully validates a scenario file. `base_dir` resolves relative
// survey paths. theta/epsilon, when given, override the values of every
// survey directive in the file.
struct LoadOptions {
  std::string base_dir = ".";
  std::optional<double> theta;
  std::optional<double> epsilon;
  std::optional<bool> closed_world;
};

Scenario parse_scenario(std::string_view text, const LoadOptions& opts = {});
Scenario load_scenario_file(const std::string& path, const LoadOptions& opts = {});

}  // namespace deon
