#include "deon/facts.hpp"

#include <algorithm>
#include <cctype>

#include "deon/scenario.hpp"

namespace deon {

namespace {

std::vector<Literal> sorted_unique(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end(), [](const Literal& a, const Literal& b) {
    return canonical(a) < canonical(b);
  });
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

std::string set_text(const std::vector<Literal>& lits) {
  std::string out = "{";
  for (size_t i = 0; i < lits.size(); ++i) {
    if (i) out += ',';
    out += canonical(lits[i]);
  }
  out += '}';
  return out;
}

}  // namespace

CompatibleKey::CompatibleKey(Literal a, Literal b) {
  if (canonical(a) <= canonical(b)) {
    first = std::move(a);
    second = std::move(b);
  } else {
    first = std::move(b);
    second = std::move(a);
  }
}

CopossibleKey::CopossibleKey(std::vector<Literal> a, std::vector<Literal> b) {
  first = sorted_unique(std::move(a));
  second = sorted_unique(std::move(b));
  if (set_text(second) < set_text(first)) std::swap(first, second);
}

std::string to_text(const FactKey& key) {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, UnderminesKey>) {
          return "undermines(" + k.plan + "," + canonical(k.condition) + ")";
        } else if constexpr (std::is_same_v<T, CompatibleKey>) {
          return "compatible(" + canonical(k.first) + "," + canonical(k.second) + ")";
        } else {
          return "copossible(" + set_text(k.first) + "," + set_text(k.second) + ")";
        }
      },
      key);
}

// ---------------------------------------------------------------------------
// Fact key parsing
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void key_error(const std::string& msg) { throw ParseError(msg, 1, 1); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on commas at nesting depth zero w.r.t. (), {}.
std::vector<std::string_view> split_top(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '{') ++depth;
    else if (c == ')' || c == '}') --depth;
    else if (c == ',' && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

Literal parse_literal_text(std::string_view text) {
  FormulaPtr f = parse_formula(text);
  if (const FLit* l = f->as<FLit>()) return l->lit;
  key_error("expected a literal, got '" + std::string(text) + "'");
}

std::vector<Literal> parse_literal_set(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    key_error("expected {literal,...}, got '" + std::string(text) + "'");
  std::vector<Literal> lits;
  for (std::string_view part : split_top(text.substr(1, text.size() - 2)))
    lits.push_back(parse_literal_text(part));
  if (lits.empty()) key_error("empty literal set in fact key");
  return lits;
}

std::string_view strip_call(std::string_view text, std::string_view head) {
  text = trim(text);
  if (!text.starts_with(head) || text.size() < head.size() + 2) return {};
  std::string_view body = text.substr(head.size());
  if (body.front() != '(' || body.back() != ')') return {};
  return body.substr(1, body.size() - 2);
}

}  // namespace

FactKey parse_fact_key(std::string_view text) {
  text = trim(text);
  if (std::string_view body = strip_call(text, "undermines"); !body.empty()) {
    auto parts = split_top(body);
    if (parts.size() != 2) key_error("undermines(...) takes a plan id and a literal");
    std::string plan(parts[0]);
    if (!is_identifier(plan)) key_error("bad plan id '" + plan + "' in undermines key");
    return UnderminesKey{std::move(plan), parse_literal_text(parts[1])};
  }
  if (std::string_view body = strip_call(text, "compatible"); !body.empty()) {
    auto parts = split_top(body);
    if (parts.size() != 2) key_error("compatible(...) takes two action literals");
    return CompatibleKey(parse_literal_text(parts[0]), parse_literal_text(parts[1]));
  }
  if (std::string_view body = strip_call(text, "copossible"); !body.empty()) {
    auto parts = split_top(body);
    if (parts.size() != 2) key_error("copossible(...) takes two literal sets");
    return CopossibleKey(parse_literal_set(parts[0]), parse_literal_set(parts[1]));
  }
  key_error("unrecognized fact key '" + std::string(text) + "'");
}

UtilityExpr parse_utility_key(std::string_view text) {
  std::string_view body = strip_call(text, "u");
  if (body.empty()) key_error("expected u(cond,...,action), got '" + std::string(text) + "'");
  auto parts = split_top(body);
  if (parts.size() < 2) key_error("u(...) needs at least one condition and an action");
  UtilityExpr u;
  for (size_t i = 0; i + 1 < parts.size(); ++i)
    u.conditions.push_back(parse_literal_text(parts[i]));
  u.action = parse_literal_text(parts.back());
  return u;
}

// ---------------------------------------------------------------------------
// FactBase
// ---------------------------------------------------------------------------

std::string utility_key_text(const std::vector<Literal>& conditions, const Literal& action) {
  std::string out = "u(";
  for (const Literal& c : sorted_unique(conditions)) {
    out += canonical(c);
    out += ',';
  }
  out += canonical(action);
  out += ')';
  return out;
}

void FactBase::set(const FactKey& key, Truth3 value) {
  std::string text = to_text(key);
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, UnderminesKey>) {
          undermines_[text] = value;
        } else if constexpr (std::is_same_v<T, CompatibleKey>) {
          compatible_[text] = value;
        } else {
          copossible_[text] = value;
          std::vector<Literal> all = k.first;
          all.insert(all.end(), k.second.begin(), k.second.end());
          unions_.emplace(set_text(sorted_unique(std::move(all))), text);
        }
      },
      key);
}

void FactBase::set_utility(const std::vector<Literal>& conditions, const Literal& action,
                           double value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw ValidationError("utility value " + std::to_string(value) + " outside [0,1]");
  utilities_[utility_key_text(conditions, action)] = value;
}

void FactBase::set_override(ModalOverride ov) {
  overrides_[canonical(ov.formula)] = std::move(ov);
}

Truth3 FactBase::query(const FactKey& key) const {
  const std::map<std::string, Truth3>* table = nullptr;
  Truth3 closed_default = Truth3::True;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, UnderminesKey>) {
          table = &undermines_;
          closed_default = Truth3::False;
        } else if constexpr (std::is_same_v<T, CompatibleKey>) {
          table = &compatible_;
        } else {
          table = &copossible_;
        }
      },
      key);
  auto it = table->find(to_text(key));
  if (it != table->end()) return it->second;
  return closed_world ? closed_default : Truth3::Unknown;
}

bool FactBase::has_explicit(const FactKey& key) const {
  std::string text = to_text(key);
  return undermines_.count(text) || compatible_.count(text) || copossible_.count(text);
}

std::optional<double> FactBase::utility_of(const std::vector<Literal>& conditions,
                                           const Literal& action) const {
  auto it = utilities_.find(utility_key_text(conditions, action));
  if (it == utilities_.end()) return std::nullopt;
  return it->second;
}

FormulaPtr negate_body(const FormulaPtr& f) {
  if (const FNot* n = f->as<FNot>()) return n->f;
  return lnot(f);
}

std::optional<bool> FactBase::override_for(const FormulaPtr& modal_node) const {
  auto direct = overrides_.find(canonical(modal_node));
  if (direct != overrides_.end()) return direct->second.value;

  FormulaPtr dual;
  if (const FBelievePoss* bp = modal_node->as<FBelievePoss>())
    dual = believe_nec(bp->agent, negate_body(bp->f));
  else if (const FBelieveNec* bn = modal_node->as<FBelieveNec>())
    dual = believe_poss(bn->agent, negate_body(bn->f));
  else
    return std::nullopt;
  auto it = overrides_.find(canonical(dual));
  if (it != overrides_.end()) return !it->second.value;
  return std::nullopt;
}

std::optional<Truth3> FactBase::copossible_by_union(const std::vector<Literal>& literals) const {
  auto it = unions_.find(set_text(sorted_unique(literals)));
  if (it == unions_.end()) return std::nullopt;
  return copossible_.at(it->second);
}

}  // namespace deon
