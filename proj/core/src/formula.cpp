#include "deon/formula.hpp"
#include "deon/truth.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace deon {

std::string to_string(Truth3 v) {
  switch (v) {
    case Truth3::True: return "true";
    case Truth3::False: return "false";
    default: return "unknown";
  }
}

Truth3 truth3_from_string(const std::string& s) {
  if (s == "true") return Truth3::True;
  if (s == "false") return Truth3::False;
  if (s == "unknown") return Truth3::Unknown;
  throw std::invalid_argument("not a truth value: '" + s + "'");
}

bool complementary(const Literal& a, const Literal& b) {
  return a.atom == b.atom && a.negated != b.negated;
}

ParseError::ParseError(std::string msg, int line_, int col_)
    : std::runtime_error(std::move(msg)), line(line_), col(col_) {}

bool is_reserved_word(std::string_view name) {
  return name == "P" || name == "dia" || name == "box" || name == "forall" ||
         name == "u" || name == "TRUE";
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

FormulaPtr make(FormulaNode n) { return std::make_shared<const Formula>(std::move(n)); }

FormulaPtr lit(Literal l) { return make(FLit{std::move(l)}); }
FormulaPtr lit(Atom a, bool negated) { return make(FLit{Literal{std::move(a), negated}}); }
FormulaPtr lnot(FormulaPtr f) { return make(FNot{std::move(f)}); }

FormulaPtr conj(std::vector<FormulaPtr> parts) {
  if (parts.empty()) return truth();
  if (parts.size() == 1) return parts.front();
  return make(FAnd{std::move(parts)});
}

FormulaPtr disj(std::vector<FormulaPtr> parts) {
  if (parts.empty()) return truth();
  if (parts.size() == 1) return parts.front();
  return make(FOr{std::move(parts)});
}

FormulaPtr implies(FormulaPtr lhs, FormulaPtr rhs) {
  return make(FImplies{std::move(lhs), std::move(rhs)});
}
FormulaPtr poss(FormulaPtr f) { return make(FPoss{std::move(f)}); }
FormulaPtr believe_poss(Term agent, FormulaPtr f) {
  return make(FBelievePoss{std::move(agent), std::move(f)});
}
FormulaPtr believe_nec(Term agent, FormulaPtr f) {
  return make(FBelieveNec{std::move(agent), std::move(f)});
}
FormulaPtr forall(std::string var, FormulaPtr body) {
  return make(FForAll{std::move(var), std::move(body)});
}
FormulaPtr geq(UtilityExpr lhs, UtilityExpr rhs) {
  return make(FGeq{std::move(lhs), std::move(rhs)});
}
FormulaPtr truth() { return make(FTrue{}); }

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  const FormulaNode& na = a->node();
  const FormulaNode& nb = b->node();
  if (na.index() != nb.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(nb);
        if constexpr (std::is_same_v<T, FLit>) {
          return x.lit == y.lit;
        } else if constexpr (std::is_same_v<T, FNot>) {
          return equal(x.f, y.f);
        } else if constexpr (std::is_same_v<T, FAnd> || std::is_same_v<T, FOr>) {
          if (x.parts.size() != y.parts.size()) return false;
          for (size_t i = 0; i < x.parts.size(); ++i)
            if (!equal(x.parts[i], y.parts[i])) return false;
          return true;
        } else if constexpr (std::is_same_v<T, FImplies>) {
          return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, FPoss>) {
          return equal(x.f, y.f);
        } else if constexpr (std::is_same_v<T, FBelievePoss>) {
          return x.agent == y.agent && equal(x.f, y.f);
        } else if constexpr (std::is_same_v<T, FBelieveNec>) {
          return x.agent == y.agent && equal(x.f, y.f);
        } else if constexpr (std::is_same_v<T, FForAll>) {
          return x.var == y.var && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, FGeq>) {
          return x.lhs == y.lhs && x.rhs == y.rhs;
        } else {
          return true;  // FTrue
        }
      },
      na);
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

static Term substitute(const Term& t, const std::string& var, const Term& repl) {
  if (t.is_var() && t.name == var) return repl;
  return t;
}

Literal substitute(const Literal& l, const std::string& var, const Term& t) {
  Literal out = l;
  for (Term& arg : out.atom.args) arg = substitute(arg, var, t);
  return out;
}

static UtilityExpr substitute(const UtilityExpr& u, const std::string& var, const Term& t) {
  UtilityExpr out;
  out.conditions.reserve(u.conditions.size());
  for (const Literal& c : u.conditions) out.conditions.push_back(substitute(c, var, t));
  out.action = substitute(u.action, var, t);
  return out;
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& t) {
  return std::visit(
      [&](const auto& x) -> FormulaPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FLit>) {
          Literal l = substitute(x.lit, var, t);
          if (l == x.lit) return f;
          return lit(std::move(l));
        } else if constexpr (std::is_same_v<T, FNot>) {
          FormulaPtr sub = substitute(x.f, var, t);
          return sub == x.f ? f : lnot(std::move(sub));
        } else if constexpr (std::is_same_v<T, FAnd> || std::is_same_v<T, FOr>) {
          std::vector<FormulaPtr> parts;
          parts.reserve(x.parts.size());
          bool changed = false;
          for (const FormulaPtr& p : x.parts) {
            parts.push_back(substitute(p, var, t));
            changed |= parts.back() != p;
          }
          if (!changed) return f;
          if constexpr (std::is_same_v<T, FAnd>)
            return make(FAnd{std::move(parts)});
          else
            return make(FOr{std::move(parts)});
        } else if constexpr (std::is_same_v<T, FImplies>) {
          FormulaPtr l = substitute(x.lhs, var, t), r = substitute(x.rhs, var, t);
          return (l == x.lhs && r == x.rhs) ? f : implies(std::move(l), std::move(r));
        } else if constexpr (std::is_same_v<T, FPoss>) {
          FormulaPtr sub = substitute(x.f, var, t);
          return sub == x.f ? f : poss(std::move(sub));
        } else if constexpr (std::is_same_v<T, FBelievePoss>) {
          FormulaPtr sub = substitute(x.f, var, t);
          Term agent = substitute(x.agent, var, t);
          if (sub == x.f && agent == x.agent) return f;
          return believe_poss(std::move(agent), std::move(sub));
        } else if constexpr (std::is_same_v<T, FBelieveNec>) {
          FormulaPtr sub = substitute(x.f, var, t);
          Term agent = substitute(x.agent, var, t);
          if (sub == x.f && agent == x.agent) return f;
          return believe_nec(std::move(agent), std::move(sub));
        } else if constexpr (std::is_same_v<T, FForAll>) {
          if (x.var == var) return f;  // shadowed, occurrences below are bound
          FormulaPtr sub = substitute(x.body, var, t);
          return sub == x.body ? f : forall(x.var, std::move(sub));
        } else if constexpr (std::is_same_v<T, FGeq>) {
          UtilityExpr l = substitute(x.lhs, var, t), r = substitute(x.rhs, var, t);
          if (l == x.lhs && r == x.rhs) return f;
          return geq(std::move(l), std::move(r));
        } else {
          return f;  // FTrue
        }
      },
      f->node());
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

static void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                         std::set<std::string>& out) {
  auto term_free = [&](const Term& t) {
    if (t.is_var() && !bound.count(t.name)) out.insert(t.name);
  };
  auto lit_free = [&](const Literal& l) {
    for (const Term& a : l.atom.args) term_free(a);
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FLit>) {
          lit_free(x.lit);
        } else if constexpr (std::is_same_v<T, FNot>) {
          collect_free(x.f, bound, out);
        } else if constexpr (std::is_same_v<T, FAnd> || std::is_same_v<T, FOr>) {
          for (const FormulaPtr& p : x.parts) collect_free(p, bound, out);
        } else if constexpr (std::is_same_v<T, FImplies>) {
          collect_free(x.lhs, bound, out);
          collect_free(x.rhs, bound, out);
        } else if constexpr (std::is_same_v<T, FPoss>) {
          collect_free(x.f, bound, out);
        } else if constexpr (std::is_same_v<T, FBelievePoss>) {
          term_free(x.agent);
          collect_free(x.f, bound, out);
        } else if constexpr (std::is_same_v<T, FBelieveNec>) {
          term_free(x.agent);
          collect_free(x.f, bound, out);
        } else if constexpr (std::is_same_v<T, FForAll>) {
          bool inserted = bound.insert(x.var).second;
          collect_free(x.body, bound, out);
          if (inserted) bound.erase(x.var);
        } else if constexpr (std::is_same_v<T, FGeq>) {
          for (const Literal& c : x.lhs.conditions) lit_free(c);
          lit_free(x.lhs.action);
          for (const Literal& c : x.rhs.conditions) lit_free(c);
          lit_free(x.rhs.action);
        }
      },
      f->node());
}

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical serialization
// ---------------------------------------------------------------------------

std::string canonical(const Term& t) { return t.name; }

std::string canonical(const Atom& a) {
  std::string out = a.predicate;
  out += '(';
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ',';
    out += a.args[i].name;
  }
  out += ')';
  return out;
}

std::string canonical(const Literal& l) {
  return l.negated ? "~" + canonical(l.atom) : canonical(l.atom);
}

std::string canonical(const UtilityExpr& u) {
  std::string out = "u(";
  for (const Literal& c : u.conditions) {
    out += canonical(c);
    out += ',';
  }
  out += canonical(u.action);
  out += ')';
  return out;
}

namespace {

// Binding strength, loosest first. A child is parenthesized when its own
// level is looser than the position it is printed in.
enum Level { kImplies = 0, kOr = 1, kAnd = 2, kUnary = 3 };

Level level_of(const FormulaPtr& f) {
  return std::visit(
      [](const auto& x) -> Level {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FImplies>) return kImplies;
        else if constexpr (std::is_same_v<T, FOr>) return kOr;
        else if constexpr (std::is_same_v<T, FAnd>) return kAnd;
        else return kUnary;
      },
      f->node());
}

void write(const FormulaPtr& f, Level pos, std::string& out);

// Operand of a prefix operator: atomic/prefix operands print bare, anything
// looser gets parentheses.
void write_operand(const FormulaPtr& f, std::string& out) {
  if (level_of(f) == kUnary) {
    // A positive literal directly under ~ would re-parse as a negated
    // literal, so FNot parenthesizes literals and TRUE via write() callers.
    write(f, kUnary, out);
  } else {
    out += '(';
    write(f, kImplies, out);
    out += ')';
  }
}

void write(const FormulaPtr& f, Level pos, std::string& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FLit>) {
          out += canonical(x.lit);
        } else if constexpr (std::is_same_v<T, FNot>) {
          out += '~';
          // Parenthesize literal and TRUE operands to keep logical negation
          // distinct from a negated literal.
          const Formula& operand = *x.f;
          if (operand.as<FLit>() || operand.as<FTrue>() || operand.as<FGeq>()) {
            out += '(';
            write(x.f, kImplies, out);
            out += ')';
          } else {
            write_operand(x.f, out);
          }
        } else if constexpr (std::is_same_v<T, FAnd>) {
          bool paren = pos > kAnd;
          if (paren) out += '(';
          for (size_t i = 0; i < x.parts.size(); ++i) {
            if (i) out += " & ";
            write(x.parts[i], kUnary, out);
          }
          if (paren) out += ')';
        } else if constexpr (std::is_same_v<T, FOr>) {
          bool paren = pos > kOr;
          if (paren) out += '(';
          for (size_t i = 0; i < x.parts.size(); ++i) {
            if (i) out += " | ";
            write(x.parts[i], kAnd, out);
          }
          if (paren) out += ')';
        } else if constexpr (std::is_same_v<T, FImplies>) {
          bool paren = pos > kImplies;
          if (paren) out += '(';
          write(x.lhs, kOr, out);
          out += " -> ";
          write(x.rhs, kImplies, out);  // right-associative
          if (paren) out += ')';
        } else if constexpr (std::is_same_v<T, FPoss>) {
          out += "P ";
          write_operand(x.f, out);
        } else if constexpr (std::is_same_v<T, FBelievePoss>) {
          out += "dia[" + x.agent.name + "] ";
          write_operand(x.f, out);
        } else if constexpr (std::is_same_v<T, FBelieveNec>) {
          out += "box[" + x.agent.name + "] ";
          write_operand(x.f, out);
        } else if constexpr (std::is_same_v<T, FForAll>) {
          out += "forall " + x.var + ".";
          write_operand(x.body, out);
        } else if constexpr (std::is_same_v<T, FGeq>) {
          out += canonical(x.lhs);
          out += " >= ";
          out += canonical(x.rhs);
        } else {
          out += "TRUE";
        }
      },
      f->node());
}

}  // namespace

std::string canonical(const FormulaPtr& f) {
  std::string out;
  write(f, kImplies, out);
  return out;
}

}  // namespace deon
