#include <doctest.h>

#include "deon/formula.hpp"
#include "support/generators.hpp"

using namespace deon;

namespace {

Term ac(const char* n) { return Term::constant(n); }
Term av(const char* n) { return Term::variable(n); }

Literal L(const char* pred, std::vector<Term> args, bool neg = false) {
  return Literal{Atom{pred, std::move(args)}, neg};
}

}  // namespace

TEST_CASE("substitution replaces free occurrences only") {
  // C1(x)[x := a] = C1(a)
  FormulaPtr f = lit(L("C1", {av("x")}));
  FormulaPtr out = substitute(f, "x", ac("a"));
  CHECK(canonical(out) == "C1(a)");

  // forall x.C1(x) is untouched
  FormulaPtr bound = forall("x", lit(L("C1", {av("x")})));
  CHECK(equal(substitute(bound, "x", ac("a")), bound));

  // forall x.(C3(x)) & C3(y) [y := a] replaces only the free occurrence
  FormulaPtr mixed = make(FAnd{{forall("x", lit(L("C3", {av("x")}))), lit(L("C3", {av("y")}))}});
  FormulaPtr subbed = substitute(mixed, "y", ac("a"));
  CHECK(canonical(subbed) == "forall x.C3(x) & C3(a)");
  CHECK(free_vars(subbed).empty());

  // absent variable is a no-op, and substitution is idempotent afterwards
  CHECK(equal(substitute(subbed, "y", ac("b")), subbed));
}

TEST_CASE("complementary literals") {
  Literal c8 = L("C8", {ac("b")});
  Literal not_c8 = L("C8", {ac("b")}, true);
  Literal c8_a = L("C8", {ac("a")}, true);

  CHECK(complementary(c8, not_c8));
  CHECK(complementary(not_c8, c8));  // symmetric
  CHECK_FALSE(complementary(c8, c8));  // irreflexive
  CHECK_FALSE(complementary(c8, c8_a));  // different argument
}

TEST_CASE("canonical serialization fixes spelling and spacing") {
  CHECK(canonical(lit(L("C1", {ac("a")}))) == "C1(a)");

  FormulaPtr nested = believe_poss(
      ac("a"), poss(make(FAnd{{lit(L("A5", {ac("b")})), lit(L("A6", {ac("a"), ac("b")}))}})));
  CHECK(canonical(nested) == "dia[a] P (A5(b) & A6(a,b))");

  FormulaPtr neg = lnot(believe_nec(ac("a"), poss(lit(L("C1", {ac("a")})))));
  CHECK(canonical(neg) == "~box[a] P C1(a)");

  UtilityExpr lhs{{L("C4", {ac("a")}), L("C5", {ac("a")})}, L("A3", {ac("a")})};
  UtilityExpr rhs{{L("C4", {ac("a")}), L("C5", {ac("a")})}, L("A4", {ac("a")})};
  CHECK(canonical(geq(lhs, rhs)) == "u(C4(a),C5(a),A3(a)) >= u(C4(a),C5(a),A4(a))");

  CHECK(canonical(truth()) == "TRUE");
}

TEST_CASE("serialization keeps negated literals distinct from negation") {
  FormulaPtr neg_lit = lit(L("C1", {ac("a")}, true));
  FormulaPtr not_lit = lnot(lit(L("C1", {ac("a")})));
  CHECK(canonical(neg_lit) == "~C1(a)");
  CHECK(canonical(not_lit) == "~(C1(a))");
  CHECK(equal(parse_formula("~C1(a)"), neg_lit));
  CHECK(equal(parse_formula("~(C1(a))"), not_lit));
}

TEST_CASE("serialization parenthesizes by structure, not by habit") {
  FormulaPtr a = lit(L("C1", {ac("a")}));
  FormulaPtr b = lit(L("C2", {ac("a")}));
  FormulaPtr c = lit(L("C3", {ac("a")}));

  CHECK(canonical(make(FAnd{{make(FOr{{a, b}}), c}})) == "(C1(a) | C2(a)) & C3(a)");
  CHECK(canonical(make(FOr{{make(FAnd{{a, b}}), c}})) == "C1(a) & C2(a) | C3(a)");
  CHECK(canonical(make(FAnd{{a, make(FAnd{{b, c}})}})) == "C1(a) & (C2(a) & C3(a))");
  CHECK(canonical(implies(implies(a, b), c)) == "(C1(a) -> C2(a)) -> C3(a)");
  CHECK(canonical(implies(a, implies(b, c))) == "C1(a) -> C2(a) -> C3(a)");
}

TEST_CASE("parse_formula inverts serialization") {
  FormulaPtr f = parse_formula("dia[a] P (A5(b) & A6(a,b))");
  const FBelievePoss* bp = f->as<FBelievePoss>();
  REQUIRE(bp);
  CHECK(bp->agent == ac("a"));
  const FPoss* p = bp->f->as<FPoss>();
  REQUIRE(p);
  const FAnd* conj_node = p->f->as<FAnd>();
  REQUIRE(conj_node);
  CHECK(conj_node->parts.size() == 2);

  CHECK(canonical(parse_formula("C1(a)")) == "C1(a)");
  CHECK(canonical(parse_formula("forall x.(C1(x) & C2(x) -> A1(x))")) ==
        "forall x.(C1(x) & C2(x) -> A1(x))");
}

TEST_CASE("parse_formula reports syntax errors with position") {
  CHECK_THROWS_AS(parse_formula("C1("), ParseError);
  try {
    parse_formula("C1(a) &");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col >= 7);
  }
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("C1(a) C2(a)"), ParseError);
  CHECK_THROWS_AS(parse_formula("forall x.forall x.C1(x)"), ParseError);
}

TEST_CASE("parse_formula rejects inconsistent arity") {
  CHECK_THROWS_AS(parse_formula("C1(a) & C1(a,b)"), ParseError);
}

TEST_CASE("bound variables parse as variables, constants as constants") {
  FormulaPtr f = parse_formula("forall x.(C1(x) & C1(a))");
  const FForAll* fa = f->as<FForAll>();
  REQUIRE(fa);
  const FAnd* body = fa->body->as<FAnd>();
  REQUIRE(body);
  CHECK(body->parts[0]->as<FLit>()->lit.atom.args[0].is_var());
  CHECK_FALSE(body->parts[1]->as<FLit>()->lit.atom.args[0].is_var());
}

TEST_CASE("round trip holds on a quick random sample") {
  deon::testing::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    FormulaPtr f = deon::testing::random_formula(rng, 5);
    CAPTURE(canonical(f));
    CHECK(equal(parse_formula(canonical(f)), f));
  }
}
