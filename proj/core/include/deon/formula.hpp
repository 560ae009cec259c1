#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace deon {

// ---------------------------------------------------------------------------
// Terms, atoms, literals
// ---------------------------------------------------------------------------

struct Term {
  enum class Kind { Const, Var };
  Kind kind = Kind::Const;
  std::string name;

  static Term constant(std::string n) { return {Kind::Const, std::move(n)}; }
  static Term variable(std::string n) { return {Kind::Var, std::move(n)}; }
  bool is_var() const { return kind == Kind::Var; }

  friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Literal {
  Atom atom;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

// True iff the two literals share the same atom with opposite signs.
bool complementary(const Literal& a, const Literal& b);

// Denotes the expected-utility measure of taking `action` under `conditions`;
// it resolves to a number only through a fact base lookup.
struct UtilityExpr {
  std::vector<Literal> conditions;
  Literal action;

  friend bool operator==(const UtilityExpr&, const UtilityExpr&) = default;
};

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct FLit { Literal lit; };
struct FNot { FormulaPtr f; };
struct FAnd { std::vector<FormulaPtr> parts; };  // size >= 2
struct FOr { std::vector<FormulaPtr> parts; };   // size >= 2
struct FImplies { FormulaPtr lhs, rhs; };
struct FPoss { FormulaPtr f; };                  // "it is possible that"
struct FBelievePoss { Term agent; FormulaPtr f; };  // dia[agent]
struct FBelieveNec { Term agent; FormulaPtr f; };   // box[agent]
struct FForAll { std::string var; FormulaPtr body; };
struct FGeq { UtilityExpr lhs, rhs; };
struct FTrue {};  // trivially true sentinel ("TRUE")

using FormulaNode = std::variant<FLit, FNot, FAnd, FOr, FImplies, FPoss,
                                 FBelievePoss, FBelieveNec, FForAll, FGeq, FTrue>;

class Formula {
 public:
  explicit Formula(FormulaNode n) : node_(std::move(n)) {}
  const FormulaNode& node() const { return node_; }

  template <class T>
  const T* as() const { return std::get_if<T>(&node_); }

 private:
  FormulaNode node_;
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);

// Construction helpers. `conj`/`disj` collapse singleton lists to the element
// itself and an empty conjunction to TRUE.
FormulaPtr make(FormulaNode n);
FormulaPtr lit(Literal l);
FormulaPtr lit(Atom a, bool negated = false);
FormulaPtr lnot(FormulaPtr f);
FormulaPtr conj(std::vector<FormulaPtr> parts);
FormulaPtr disj(std::vector<FormulaPtr> parts);
FormulaPtr implies(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr poss(FormulaPtr f);
FormulaPtr believe_poss(Term agent, FormulaPtr f);
FormulaPtr believe_nec(Term agent, FormulaPtr f);
FormulaPtr forall(std::string var, FormulaPtr body);
FormulaPtr geq(UtilityExpr lhs, UtilityExpr rhs);
FormulaPtr truth();

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Replaces every free occurrence of variable `var` with term `t` (bound
// occurrences untouched; absent variable is a no-op).
Literal substitute(const Literal& l, const std::string& var, const Term& t);
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& t);

// Variables occurring free in f.
std::set<std::string> free_vars(const FormulaPtr& f);

// Deterministic canonical text. parse_formula inverts it exactly.
std::string canonical(const Term& t);
std::string canonical(const Atom& a);
std::string canonical(const Literal& l);
std::string canonical(const UtilityExpr& u);
std::string canonical(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct ParseError : std::runtime_error {
  ParseError(std::string msg, int line, int col);
  int line;
  int col;
};

// Names that cannot be used for predicates, actions, agents or plans.
bool is_reserved_word(std::string_view name);
bool is_identifier(std::string_view name);

class Scenario;  // scenario.hpp

// Parses the canonical formula grammar. Arity use must be self-consistent
// within the text; with a scenario every symbol must also be declared with
// matching arity (the availability atom E/1 is always accepted).
FormulaPtr parse_formula(std::string_view text);
FormulaPtr parse_formula(std::string_view text, const Scenario& scenario);

}  // namespace deon
