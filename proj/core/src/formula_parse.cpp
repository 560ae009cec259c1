#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "deon/formula.hpp"
#include "deon/scenario.hpp"

namespace deon {

namespace {

enum class Tok {
  Ident, KwP, KwDia, KwBox, KwForall, KwU, KwTrue,
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Comma, Dot, Amp, Pipe, Arrow, Tilde, Geq, Eof,
};

struct Token {
  Tok kind;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { tokenize(); }
  const std::vector<Token>& tokens() const { return toks_; }

 private:
  void tokenize() {
    size_t i = 0;
    int line = 1, col = 1;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n; ++k, ++i) {
        if (src_[i] == '\n') { ++line; col = 1; } else { ++col; }
      }
    };
    while (i < src_.size()) {
      char c = src_[i];
      if (std::isspace(static_cast<unsigned char>(c))) { advance(1); continue; }
      int tl = line, tc = col;
      auto push = [&](Tok k, std::string text, size_t len) {
        toks_.push_back({k, std::move(text), tl, tc});
        advance(len);
      };
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
          ++j;
        std::string word(src_.substr(i, j - i));
        Tok k = Tok::Ident;
        if (word == "P") k = Tok::KwP;
        else if (word == "dia") k = Tok::KwDia;
        else if (word == "box") k = Tok::KwBox;
        else if (word == "forall") k = Tok::KwForall;
        else if (word == "u") k = Tok::KwU;
        else if (word == "TRUE") k = Tok::KwTrue;
        push(k, std::move(word), j - i);
        continue;
      }
      switch (c) {
        case '(': push(Tok::LParen, "(", 1); break;
        case ')': push(Tok::RParen, ")", 1); break;
        case '[': push(Tok::LBracket, "[", 1); break;
        case ']': push(Tok::RBracket, "]", 1); break;
        case '{': push(Tok::LBrace, "{", 1); break;
        case '}': push(Tok::RBrace, "}", 1); break;
        case ',': push(Tok::Comma, ",", 1); break;
        case '.': push(Tok::Dot, ".", 1); break;
        case '&': push(Tok::Amp, "&", 1); break;
        case '|': push(Tok::Pipe, "|", 1); break;
        case '~': push(Tok::Tilde, "~", 1); break;
        case '-':
          if (i + 1 < src_.size() && src_[i + 1] == '>') { push(Tok::Arrow, "->", 2); break; }
          throw ParseError("unexpected character '-'", tl, tc);
        case '>':
          if (i + 1 < src_.size() && src_[i + 1] == '=') { push(Tok::Geq, ">=", 2); break; }
          throw ParseError("unexpected character '>'", tl, tc);
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
      }
    }
    toks_.push_back({Tok::Eof, "", line, col});
  }

  std::string_view src_;
  std::vector<Token> toks_;
};

class Parser {
 public:
  Parser(std::string_view text, const Scenario* scenario)
      : lexer_(text), scenario_(scenario) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_implies();
    expect(Tok::Eof, "end of input");
    return f;
  }

 private:
  const Token& peek(int ahead = 0) const {
    size_t i = pos_ + ahead;
    const auto& toks = lexer_.tokens();
    return i < toks.size() ? toks[i] : toks.back();
  }
  Token next() { return lexer_.tokens()[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind == k) { ++pos_; return true; }
    return false;
  }
  Token expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what);
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::Eof ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got, t.line, t.col);
  }

  FormulaPtr parse_implies() {
    FormulaPtr lhs = parse_disj();
    if (accept(Tok::Arrow)) return implies(std::move(lhs), parse_implies());
    return lhs;
  }

  FormulaPtr parse_disj() {
    std::vector<FormulaPtr> parts{parse_conj()};
    while (accept(Tok::Pipe)) parts.push_back(parse_conj());
    if (parts.size() == 1) return parts.front();
    return make(FOr{std::move(parts)});
  }

  FormulaPtr parse_conj() {
    std::vector<FormulaPtr> parts{parse_unary()};
    while (accept(Tok::Amp)) parts.push_back(parse_unary());
    if (parts.size() == 1) return parts.front();
    return make(FAnd{std::move(parts)});
  }

  FormulaPtr parse_unary() {
    switch (peek().kind) {
      case Tok::Tilde: {
        next();
        // ~ before an atom reads as a negated literal; before anything else
        // it is logical negation.
        if (peek().kind == Tok::Ident) return lit(parse_literal_body(true));
        return lnot(parse_unary());
      }
      case Tok::KwP:
        next();
        return poss(parse_unary());
      case Tok::KwDia: {
        next();
        Term agent = parse_indexed_agent();
        return believe_poss(std::move(agent), parse_unary());
      }
      case Tok::KwBox: {
        next();
        Term agent = parse_indexed_agent();
        return believe_nec(std::move(agent), parse_unary());
      }
      case Tok::KwForall: {
        next();
        Token var = expect(Tok::Ident, "variable name");
        if (bound_.count(var.text))
          throw ParseError("variable '" + var.text + "' already bound", var.line, var.col);
        expect(Tok::Dot, "'.'");
        bound_.insert(var.text);
        FormulaPtr body = parse_unary();
        bound_.erase(var.text);
        return forall(var.text, std::move(body));
      }
      default:
        return parse_primary();
    }
  }

  FormulaPtr parse_primary() {
    switch (peek().kind) {
      case Tok::KwTrue:
        next();
        return truth();
      case Tok::KwU: {
        UtilityExpr lhs = parse_uexpr();
        expect(Tok::Geq, "'>='");
        UtilityExpr rhs = parse_uexpr();
        return geq(std::move(lhs), std::move(rhs));
      }
      case Tok::Ident:
        return lit(parse_literal_body(false));
      case Tok::LParen: {
        next();
        FormulaPtr f = parse_implies();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        fail("expected a formula");
    }
  }

  Term parse_indexed_agent() {
    expect(Tok::LBracket, "'['");
    Token name = expect(Tok::Ident, "agent name");
    expect(Tok::RBracket, "']'");
    Term t = make_term(name);
    if (scenario_ && !t.is_var() && !scenario_->has_agent(t.name))
      throw ParseError("undeclared agent '" + t.name + "'", name.line, name.col);
    return t;
  }

  Term make_term(const Token& name) {
    if (bound_.count(name.text)) return Term::variable(name.text);
    return Term::constant(name.text);
  }

  Literal parse_literal_body(bool negated) {
    Token name = expect(Tok::Ident, "predicate name");
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    if (peek().kind != Tok::RParen) {
      args.push_back(make_term(expect(Tok::Ident, "argument")));
      while (accept(Tok::Comma))
        args.push_back(make_term(expect(Tok::Ident, "argument")));
    }
    expect(Tok::RParen, "')'");
    check_atom(name, static_cast<int>(args.size()), args);
    return Literal{Atom{name.text, std::move(args)}, negated};
  }

  UtilityExpr parse_uexpr() {
    expect(Tok::KwU, "'u'");
    expect(Tok::LParen, "'('");
    std::vector<Literal> items;
    items.push_back(parse_inner_literal());
    while (accept(Tok::Comma)) items.push_back(parse_inner_literal());
    expect(Tok::RParen, "')'");
    if (items.size() < 2) {
      const Token& t = peek();
      throw ParseError("u(...) needs at least one condition and an action", t.line, t.col);
    }
    UtilityExpr u;
    u.action = items.back();
    items.pop_back();
    u.conditions = std::move(items);
    return u;
  }

  Literal parse_inner_literal() {
    bool negated = accept(Tok::Tilde);
    return parse_literal_body(negated);
  }

  void check_atom(const Token& name, int arity, const std::vector<Term>& args) {
    auto [it, inserted] = arities_.emplace(name.text, arity);
    if (!inserted && it->second != arity)
      throw ParseError("arity mismatch: '" + name.text + "' used with " +
                           std::to_string(arity) + " argument(s), previously " +
                           std::to_string(it->second),
                       name.line, name.col);
    if (!scenario_) return;
    if (name.text == "E") {
      if (arity != 1)
        throw ParseError("availability atom E takes exactly one plan id", name.line, name.col);
      const Term& arg = args[0];
      if (arg.is_var() || !scenario_->find_plan(arg.name))
        throw ParseError("E(...) references unknown plan '" + arg.name + "'",
                         name.line, name.col);
      return;
    }
    const SymbolDecl* decl = scenario_->signature.find(name.text);
    if (!decl)
      throw ParseError("undeclared symbol '" + name.text + "'", name.line, name.col);
    if (decl->arity != arity)
      throw ParseError("arity mismatch: '" + name.text + "' declared with arity " +
                           std::to_string(decl->arity) + ", used with " +
                           std::to_string(arity),
                       name.line, name.col);
    for (const Term& arg : args)
      if (!arg.is_var() && !scenario_->has_agent(arg.name))
        throw ParseError("undeclared agent '" + arg.name + "'", name.line, name.col);
  }

  Lexer lexer_;
  const Scenario* scenario_;
  size_t pos_ = 0;
  std::set<std::string> bound_;
  std::map<std::string, int> arities_;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  return Parser(text, nullptr).parse();
}

FormulaPtr parse_formula(std::string_view text, const Scenario& scenario) {
  return Parser(text, &scenario).parse();
}

}  // namespace deon
