#include <cctype>
#include <fstream>
#include <sstream>

#include "deon/scenario.hpp"
#include "deon/survey.hpp"

namespace deon {

namespace {

struct Cursor {
  std::string_view text;
  int line;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ValidationError("line " + std::to_string(line) + ": " + msg, line);
  }
  std::string word() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected a name");
    return std::string(text.substr(start, pos - start));
  }
  std::string quoted() {
    skip_ws();
    if (pos >= text.size() || text[pos] != '"') fail("expected a quoted string");
    size_t end = text.find('"', pos + 1);
    if (end == std::string_view::npos) fail("unterminated string");
    std::string out(text.substr(pos + 1, end - pos - 1));
    pos = end + 1;
    return out;
  }
  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  double number() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '.' || text[pos] == '-' || text[pos] == '+'))
      ++pos;
    if (pos == start) fail("expected a number");
    try {
      return std::stod(std::string(text.substr(start, pos - start)));
    } catch (const std::exception&) {
      fail("bad number '" + std::string(text.substr(start, pos - start)) + "'");
    }
  }
  std::string rest() {
    skip_ws();
    std::string out(text.substr(pos));
    pos = text.size();
    while (!out.empty() && (out.back() == ' ' || out.back() == '\t')) out.pop_back();
    return out;
  }
};

class ScenarioParser {
 public:
  explicit ScenarioParser(std::string_view text, const LoadOptions& opts)
      : text_(text), opts_(opts) {}

  Scenario run() {
    std::istringstream in{std::string(text_)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      std::string stripped = strip_comment(raw);
      Cursor cur{stripped, line_no};
      if (cur.done()) continue;
      dispatch(cur);
    }
    finish();
    if (opts_.closed_world) s_.facts.closed_world = *opts_.closed_world;
    return std::move(s_);
  }

 private:
  static std::string strip_comment(const std::string& raw) {
    bool in_string = false;
    for (size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') in_string = !in_string;
      else if (raw[i] == '#' && !in_string) return raw.substr(0, i);
    }
    return raw;
  }

  void dispatch(Cursor& cur) {
    std::string head = cur.word();
    if (head == "scenario") parse_scenario_line(cur);
    else if (head == "world") parse_world(cur);
    else if (head == "agent") parse_agent(cur);
    else if (head == "predicate") parse_symbol(cur, SymbolKind::Condition);
    else if (head == "action") parse_symbol(cur, SymbolKind::Action);
    else if (head == "plan") parse_plan(cur);
    else if (head == "fact") parse_fact(cur);
    else if (head == "survey") parse_survey(cur);
    else cur.fail("unknown directive '" + head + "'");
    if (!cur.done()) cur.fail("trailing input after directive");
  }

  void parse_scenario_line(Cursor& cur) {
    if (!s_.name.empty()) cur.fail("duplicate scenario directive");
    s_.name = cur.quoted();
    if (s_.name.empty()) cur.fail("scenario name must be nonempty");
  }

  void parse_world(Cursor& cur) {
    std::string mode = cur.word();
    if (mode == "closed") s_.facts.closed_world = true;
    else if (mode == "open") s_.facts.closed_world = false;
    else cur.fail("world mode must be 'closed' or 'open'");
  }

  void check_name(Cursor& cur, const std::string& name, const char* what) {
    if (!is_identifier(name)) cur.fail(std::string(what) + " '" + name + "' is not an identifier");
    if (is_reserved_word(name) || name == "E")
      cur.fail(std::string(what) + " '" + name + "' is a reserved word");
  }

  void parse_agent(Cursor& cur) {
    std::string name = cur.word();
    check_name(cur, name, "agent");
    if (s_.has_agent(name)) cur.fail("agent '" + name + "' already declared");
    if (!cur.done() && cur.text[cur.pos] != '"') cur.fail("expected doc string");
    if (!cur.done()) cur.quoted();  // doc string kept out of the model
    s_.agents.push_back(name);
  }

  void parse_symbol(Cursor& cur, SymbolKind kind) {
    std::string name = cur.word();
    check_name(cur, name, kind == SymbolKind::Action ? "action" : "predicate");
    cur.expect('/');
    double arity = cur.number();
    if (arity < 0 || arity != static_cast<int>(arity)) cur.fail("arity must be a nonnegative integer");
    std::string doc;
    if (!cur.done()) doc = cur.quoted();
    try {
      s_.signature.declare({name, static_cast<int>(arity), kind, doc});
    } catch (const ValidationError& e) {
      cur.fail(e.what());
    }
  }

  Literal checked_literal(Cursor& cur, const std::string& text) {
    FormulaPtr f = parse_payload(cur, text);
    const FLit* l = f->as<FLit>();
    if (!l) cur.fail("expected a literal, got '" + text + "'");
    return l->lit;
  }

  FormulaPtr parse_payload(Cursor& cur, const std::string& text) {
    try {
      return parse_formula(text, s_);
    } catch (const ParseError& e) {
      cur.fail(std::string(e.what()));
    }
  }

  void parse_plan(Cursor& cur) {
    std::string id = cur.word();
    check_name(cur, id, "plan id");
    if (s_.find_plan(id)) cur.fail("duplicate plan id '" + id + "'");
    cur.expect(':');
    std::string agent = cur.word();
    if (!s_.has_agent(agent)) cur.fail("undeclared agent '" + agent + "'");
    cur.expect(':');
    std::string body = cur.rest();
    size_t arrow = body.find("=>");
    if (arrow == std::string::npos) cur.fail("plan body needs '=>'");
    std::string conds_text = body.substr(0, arrow);
    std::string action_text = body.substr(arrow + 2);

    ActionPlan plan;
    plan.id = id;
    plan.agent = Term::constant(agent);
    FormulaPtr conds = parse_payload(cur, conds_text);
    if (const FLit* l = conds->as<FLit>()) {
      plan.conditions.push_back(l->lit);
    } else if (const FAnd* a = conds->as<FAnd>()) {
      for (const FormulaPtr& part : a->parts) {
        const FLit* l2 = part->as<FLit>();
        if (!l2) cur.fail("plan conditions must be a conjunction of literals");
        plan.conditions.push_back(l2->lit);
      }
    } else {
      cur.fail("plan conditions must be a conjunction of literals");
    }
    plan.action = checked_literal(cur, action_text);
    validate_plan(cur, plan);
    s_.plans.push_back(std::move(plan));
  }

  void validate_plan(Cursor& cur, const ActionPlan& plan) {
    for (const Literal& c : plan.conditions) {
      const SymbolDecl* d = s_.signature.find(c.atom.predicate);
      if (!d || d->kind != SymbolKind::Condition)
        cur.fail("'" + c.atom.predicate + "' is not a condition predicate");
      require_ground(cur, c);
    }
    const SymbolDecl* d = s_.signature.find(plan.action.atom.predicate);
    if (!d || d->kind != SymbolKind::Action)
      cur.fail("'" + plan.action.atom.predicate + "' is not an action symbol");
    require_ground(cur, plan.action);

    bool agent_in_action = false;
    for (const Term& arg : plan.action.atom.args)
      if (arg == plan.agent) agent_in_action = true;
    if (!agent_in_action)
      cur.fail("agent '" + plan.agent.name + "' must appear in the action literal");

    for (size_t i = 0; i < plan.conditions.size(); ++i)
      for (size_t j = i + 1; j < plan.conditions.size(); ++j) {
        if (plan.conditions[i] == plan.conditions[j])
          cur.fail("duplicate condition " + canonical(plan.conditions[i]));
        if (complementary(plan.conditions[i], plan.conditions[j]))
          cur.fail("contradictory conditions " + canonical(plan.conditions[i]) + " and " +
                   canonical(plan.conditions[j]));
      }
  }

  void require_ground(Cursor& cur, const Literal& l) {
    for (const Term& arg : l.atom.args)
      if (arg.is_var()) cur.fail("plan literal " + canonical(l) + " must be ground");
  }

  void parse_fact(Cursor& cur) {
    std::string body = cur.rest();
    size_t eq = body.npos;
    for (size_t i = body.size(); i-- > 0;) {
      if (body[i] == '=' && (i == 0 || (body[i - 1] != '>' && body[i - 1] != '='))) {
        eq = i;
        break;
      }
    }
    if (eq == body.npos) cur.fail("fact needs '= value'");
    std::string key_text = body.substr(0, eq);
    while (!key_text.empty() && key_text.back() == ' ') key_text.pop_back();
    std::string value_text = body.substr(eq + 1);
    size_t vstart = value_text.find_first_not_of(' ');
    value_text = vstart == value_text.npos ? "" : value_text.substr(vstart);

    if (key_text.starts_with("u(") || key_text.starts_with("u ")) {
      UtilityExpr u;
      try {
        u = parse_utility_key(key_text);
      } catch (const ParseError& e) {
        cur.fail(e.what());
      }
      validate_utility(cur, u);
      double v;
      try {
        v = std::stod(value_text);
      } catch (const std::exception&) {
        cur.fail("utility value must be a decimal, got '" + value_text + "'");
      }
      try {
        s_.facts.set_utility(u.conditions, u.action, v);
      } catch (const ValidationError& e) {
        cur.fail(e.what());
      }
      return;
    }
    if (key_text.starts_with("dia") || key_text.starts_with("box")) {
      FormulaPtr f = parse_payload(cur, key_text);
      const FBelievePoss* bp = f->as<FBelievePoss>();
      const FBelieveNec* bn = f->as<FBelieveNec>();
      if (!bp && !bn) cur.fail("override key must be a dia[...] or box[...] formula");
      if (value_text != "true" && value_text != "false")
        cur.fail("override value must be true or false");
      Term agent = bp ? bp->agent : bn->agent;
      ModalOverride ov{agent, f, value_text == "true"};
      if (auto existing = s_.facts.override_for(f); existing && *existing != ov.value)
        cur.fail("override contradicts the dual assignment for " + canonical(f));
      s_.facts.set_override(std::move(ov));
      return;
    }
    FactKey key = parse_key(cur, key_text);
    Truth3 v;
    try {
      v = truth3_from_string(value_text);
    } catch (const std::exception&) {
      cur.fail("fact value must be true, false or unknown, got '" + value_text + "'");
    }
    s_.facts.set(key, v);
  }

  FactKey parse_key(Cursor& cur, const std::string& key_text) {
    FactKey key = UnderminesKey{"", {}};
    try {
      key = parse_fact_key(key_text);
    } catch (const ParseError& e) {
      cur.fail(e.what());
    }
    validate_key(cur, key);
    return key;
  }

  void validate_key(Cursor& cur, const FactKey& key) {
    std::visit(
        [&](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, UnderminesKey>) {
            if (!s_.find_plan(k.plan)) cur.fail("undermines key references unknown plan '" + k.plan + "'");
            validate_key_literal(cur, k.condition, SymbolKind::Condition);
          } else if constexpr (std::is_same_v<T, CompatibleKey>) {
            validate_key_literal(cur, k.first, SymbolKind::Action);
            validate_key_literal(cur, k.second, SymbolKind::Action);
          } else {
            for (const Literal& l : k.first) validate_key_literal(cur, l, SymbolKind::Condition);
            for (const Literal& l : k.second) validate_key_literal(cur, l, SymbolKind::Condition);
          }
        },
        key);
  }

  void validate_key_literal(Cursor& cur, const Literal& l, SymbolKind kind) {
    const SymbolDecl* d = s_.signature.find(l.atom.predicate);
    if (!d) cur.fail("undeclared symbol '" + l.atom.predicate + "' in fact key");
    if (d->kind != kind)
      cur.fail("'" + l.atom.predicate + "' has the wrong symbol kind for this fact key");
    if (d->arity != static_cast<int>(l.atom.args.size()))
      cur.fail("arity mismatch for '" + l.atom.predicate + "' in fact key");
    for (const Term& arg : l.atom.args) {
      if (arg.is_var()) cur.fail("fact key literal " + canonical(l) + " must be ground");
      if (!s_.has_agent(arg.name))
        cur.fail("undeclared agent '" + arg.name + "' in fact key");
    }
  }

  void validate_utility(Cursor& cur, const UtilityExpr& u) {
    for (const Literal& c : u.conditions) validate_key_literal(cur, c, SymbolKind::Condition);
    validate_key_literal(cur, u.action, SymbolKind::Action);
  }

  void parse_survey(Cursor& cur) {
    std::string path = cur.quoted();
    double theta = 0.5, epsilon = 0.05;
    if (!cur.done()) {
      std::string kw = cur.word();
      if (kw != "theta") cur.fail("expected 'theta'");
      theta = cur.number();
      if (!cur.done()) {
        kw = cur.word();
        if (kw != "epsilon") cur.fail("expected 'epsilon'");
        epsilon = cur.number();
      }
    }
    if (opts_.theta) theta = *opts_.theta;
    if (opts_.epsilon) epsilon = *opts_.epsilon;

    std::string full = opts_.base_dir.empty() ? path : opts_.base_dir + "/" + path;
    std::ifstream in(full);
    if (!in) cur.fail("cannot open survey file '" + full + "'");
    std::vector<SurveyRecord> records;
    try {
      records = read_survey_csv(in);
    } catch (const ValidationError& e) {
      cur.fail(std::string("survey '") + path + "': " + e.what());
    }
    std::vector<std::pair<FactKey, Truth3>> assignments;
    try {
      assignments = aggregate_survey(records, theta, epsilon);
    } catch (const std::exception& e) {
      cur.fail(std::string("survey '") + path + "': " + e.what());
    }
    for (const auto& [key, value] : assignments) {
      validate_key(cur, key);
      s_.facts.set(key, value);
    }
  }

  void finish() {
    if (s_.name.empty())
      throw ValidationError("missing scenario directive");
  }

  std::string_view text_;
  const LoadOptions& opts_;
  Scenario s_;
};

}  // namespace

Scenario parse_scenario(std::string_view text, const LoadOptions& opts) {
  return ScenarioParser(text, opts).run();
}

Scenario load_scenario_file(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  LoadOptions local = opts;
  if (local.base_dir == ".") {
    size_t slash = path.find_last_of('/');
    if (slash != std::string::npos) local.base_dir = path.substr(0, slash);
  }
  return parse_scenario(buf.str(), local);
}

}  // namespace deon
