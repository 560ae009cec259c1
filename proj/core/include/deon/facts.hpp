#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "deon/formula.hpp"
#include "deon/truth.hpp"

namespace deon {

// ---------------------------------------------------------------------------
// Fact keys
// ---------------------------------------------------------------------------

// "Universal adoption of plan `plan` defeats condition `condition`."
struct UnderminesKey {
  std::string plan;
  Literal condition;
};

// "The two actions can be performed together." Unordered.
struct CompatibleKey {
  Literal first, second;  // normalized: canonical(first) <= canonical(second)
  CompatibleKey(Literal a, Literal b);
};

// "The two condition sets can hold together." Unordered pair of sets.
struct CopossibleKey {
  std::vector<Literal> first, second;  // each sorted by canonical text, deduped
  CopossibleKey(std::vector<Literal> a, std::vector<Literal> b);
};

using FactKey = std::variant<UnderminesKey, CompatibleKey, CopossibleKey>;

std::string to_text(const FactKey& key);

// Parses "undermines(...)", "compatible(...)" or "copossible({...},{...})".
// Throws ParseError on malformed input.
FactKey parse_fact_key(std::string_view text);

// Parses "u(cond,...,action)". Throws ParseError on malformed input.
UtilityExpr parse_utility_key(std::string_view text);

// ---------------------------------------------------------------------------
// Fact base
// ---------------------------------------------------------------------------

// A direct truth assignment to one dia/box subformula, keyed by its
// canonical text. Highest precedence of all grounding sources.
struct ModalOverride {
  Term agent;
  FormulaPtr formula;  // the dia/box node itself
  bool value = false;
};

class FactBase {
 public:
  bool closed_world = true;

  // Explicit facts are three-valued so that survey deadband results can be
  // recorded as genuinely unknown, beating the closed-world default.
  void set(const FactKey& key, Truth3 value);
  void set_utility(const std::vector<Literal>& conditions, const Literal& action,
                   double value);  // throws ValidationError unless in [0,1]
  void set_override(ModalOverride ov);

  // Precedence: explicit fact > closed-world default > Unknown.
  // (Overrides apply to modal atoms, not to fact keys; see override().)
  Truth3 query(const FactKey& key) const;

  std::optional<double> utility_of(const std::vector<Literal>& conditions,
                                   const Literal& action) const;

  // Override for the modal node with this canonical text, if any. Looks
  // through the dia/box duality: a stored value for the dual node answers
  // for both sides.
  std::optional<bool> override_for(const FormulaPtr& modal_node) const;

  // Stored copossible pair whose two sides union to exactly `literals`
  // (used when a conjunction must be matched back to a pair of sets).
  std::optional<Truth3> copossible_by_union(const std::vector<Literal>& literals) const;

  bool has_explicit(const FactKey& key) const;
  bool compatible_empty() const { return compatible_.empty(); }

  const std::map<std::string, Truth3>& undermines() const { return undermines_; }
  const std::map<std::string, Truth3>& compatible() const { return compatible_; }
  const std::map<std::string, Truth3>& copossible() const { return copossible_; }
  const std::map<std::string, double>& utilities() const { return utilities_; }
  const std::map<std::string, ModalOverride>& overrides() const { return overrides_; }

 private:
  std::map<std::string, Truth3> undermines_;
  std::map<std::string, Truth3> compatible_;
  std::map<std::string, Truth3> copossible_;
  std::map<std::string, double> utilities_;
  std::map<std::string, ModalOverride> overrides_;
  // union-of-both-sides text -> copossible key text (first declaration wins)
  std::map<std::string, std::string> unions_;
};

std::string utility_key_text(const std::vector<Literal>& conditions, const Literal& action);

// Formula with the outermost Not stripped, or the formula negated: the body
// S of a dual modal node (dia S <-> ~box ~S).
FormulaPtr negate_body(const FormulaPtr& f);

}  // namespace deon
