#include "deon/evaluator.hpp"

#include <algorithm>
#include <cassert>

namespace deon {

std::string to_string(TraceSource s) {
  switch (s) {
    case TraceSource::Fact: return "fact";
    case TraceSource::Override: return "override";
    case TraceSource::Default: return "default";
    case TraceSource::Syntactic: return "syntactic";
    default: return "recursion-presumption";
  }
}

std::string to_line(const TraceEntry& e) {
  return std::to_string(e.depth) + "  " + e.formula + "  " + to_string(e.source) + "  " +
         to_string(e.value);
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Ethical: return "ethical";
    case Outcome::Unethical: return "unethical";
    default: return "indeterminate";
  }
}

Outcome outcome_of(Truth3 v) {
  switch (v) {
    case Truth3::True: return Outcome::Ethical;
    case Truth3::False: return Outcome::Unethical;
    default: return Outcome::Indeterminate;
  }
}

// ---------------------------------------------------------------------------

struct Evaluator::Ctx {
  std::vector<std::string> chain;  // plan ids currently under assessment
  int budget = 8;                  // remaining recursion depth
  const ActionPlan* plan_hint = nullptr;  // plan behind a universalizability node
  const ActionPlan* pair_first = nullptr;   // plans behind a copossibility node
  const ActionPlan* pair_second = nullptr;
  Trace* trace = nullptr;

  bool on_chain(const std::string& id) const {
    return std::find(chain.begin(), chain.end(), id) != chain.end();
  }
  void note(int depth, std::string formula, TraceSource source, Truth3 value) const {
    if (trace) trace->push_back({depth, std::move(formula), source, value});
  }
};

Evaluator::Evaluator(const Scenario& scenario, EngineParams params)
    : s_(scenario), params_(params) {}

// ---------------------------------------------------------------------------
// Pattern helpers
// ---------------------------------------------------------------------------

namespace {

// Unwraps P(literal & ... & literal) into the literal list. Single literals
// count as their own conjunction.
bool possible_literal_list(const FormulaPtr& f, std::vector<const Literal*>& out) {
  const FPoss* p = f->as<FPoss>();
  if (!p) return false;
  if (const FLit* l = p->f->as<FLit>()) {
    out.push_back(&l->lit);
    return true;
  }
  const FAnd* a = p->f->as<FAnd>();
  if (!a) return false;
  for (const FormulaPtr& part : a->parts) {
    const FLit* l = part->as<FLit>();
    if (!l) return false;
    out.push_back(&l->lit);
  }
  return true;
}

bool all_of_kind(const std::vector<const Literal*>& lits, const Scenario& s, SymbolKind kind) {
  for (const Literal* l : lits) {
    const SymbolDecl* d = s.signature.find(l->atom.predicate);
    if (!d || d->kind != kind) return false;
  }
  return true;
}

// P(forall ... & literals): the body of a universalizability test.
bool universalization_body(const FormulaPtr& f, std::vector<const Literal*>& lits) {
  const FPoss* p = f->as<FPoss>();
  if (!p) return false;
  const FAnd* a = p->f->as<FAnd>();
  if (!a) return false;
  int foralls = 0;
  for (const FormulaPtr& part : a->parts) {
    if (part->as<FForAll>()) {
      ++foralls;
    } else if (const FLit* l = part->as<FLit>()) {
      lits.push_back(&l->lit);
    } else {
      return false;
    }
  }
  return foralls == 1 && !lits.empty();
}

const std::string* availability_plan(const Literal& l) {
  if (l.negated || l.atom.predicate != "E" || l.atom.args.size() != 1) return nullptr;
  if (l.atom.args[0].is_var()) return nullptr;
  return &l.atom.args[0].name;
}

}  // namespace

// ---------------------------------------------------------------------------
// Core evaluation
// ---------------------------------------------------------------------------

Truth3 Evaluator::eval(const FormulaPtr& f, Ctx& ctx, int depth) const {
  return std::visit(
      [&](const auto& x) -> Truth3 {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FTrue>) {
          return Truth3::True;
        } else if constexpr (std::is_same_v<T, FLit>) {
          if (const std::string* plan = availability_plan(x.lit))
            return ground_availability(*plan, ctx, depth);
          // Bare empirical atoms have no grounding of their own.
          return Truth3::Unknown;
        } else if constexpr (std::is_same_v<T, FNot>) {
          return t3_not(eval(x.f, ctx, depth + 1));
        } else if constexpr (std::is_same_v<T, FAnd>) {
          Truth3 v = Truth3::True;
          for (const FormulaPtr& part : x.parts) v = t3_and(v, eval(part, ctx, depth + 1));
          return v;
        } else if constexpr (std::is_same_v<T, FOr>) {
          Truth3 v = Truth3::False;
          for (const FormulaPtr& part : x.parts) v = t3_or(v, eval(part, ctx, depth + 1));
          return v;
        } else if constexpr (std::is_same_v<T, FImplies>) {
          Truth3 lhs = eval(x.lhs, ctx, depth + 1);
          Truth3 rhs = eval(x.rhs, ctx, depth + 1);
          return t3_implies(lhs, rhs);
        } else if constexpr (std::is_same_v<T, FPoss>) {
          // Bare possibility (outside a modal pattern) is empirically
          // ungrounded.
          return Truth3::Unknown;
        } else if constexpr (std::is_same_v<T, FForAll>) {
          Truth3 v = Truth3::True;
          for (const std::string& agent : s_.agents) {
            FormulaPtr inst = substitute(x.body, x.var, Term::constant(agent));
            v = t3_and(v, eval(inst, ctx, depth + 1));
          }
          return v;
        } else if constexpr (std::is_same_v<T, FGeq>) {
          return eval_geq(x, ctx, depth);
        } else if constexpr (std::is_same_v<T, FBelievePoss>) {
          return eval_believe_poss(f, x, ctx, depth);
        } else {
          return eval_believe_nec(f, std::get<FBelieveNec>(f->node()), ctx, depth);
        }
      },
      f->node());
}

Truth3 Evaluator::eval_geq(const FGeq& x, Ctx& ctx, int depth) const {
  auto lhs = s_.facts.utility_of(x.lhs.conditions, x.lhs.action);
  auto rhs = s_.facts.utility_of(x.rhs.conditions, x.rhs.action);
  FormulaPtr node = geq(x.lhs, x.rhs);
  if (!lhs || !rhs) {
    ctx.note(depth, canonical(node), TraceSource::Default, Truth3::Unknown);
    return Truth3::Unknown;
  }
  Truth3 v = t3_of(*lhs >= *rhs);
  ctx.note(depth, canonical(node), TraceSource::Fact, v);
  return v;
}

Truth3 Evaluator::ground_availability(const std::string& plan_id, Ctx& ctx, int depth) const {
  std::string text = "E(" + plan_id + ")";
  const ActionPlan* plan = s_.find_plan(plan_id);
  if (!plan) {
    ctx.note(depth, text, TraceSource::Default, Truth3::Unknown);
    return Truth3::Unknown;
  }
  if (ctx.on_chain(plan_id) || ctx.budget <= 0) {
    ctx.note(depth, text, TraceSource::RecursionPresumption, Truth3::True);
    return Truth3::True;
  }
  Ctx sub;
  sub.chain = ctx.chain;
  sub.chain.push_back(plan_id);
  sub.budget = ctx.budget - 1;
  Truth3 v = t3_and(generalization_value(*plan, sub), autonomy_value(*plan, sub));
  ctx.note(depth, text, TraceSource::Fact, v);
  return v;
}

Truth3 Evaluator::eval_believe_poss(const FormulaPtr& node, const FBelievePoss& x, Ctx& ctx,
                                    int depth) const {
  if (auto ov = s_.facts.override_for(node)) {
    ctx.note(depth, canonical(node), TraceSource::Override, t3_of(*ov));
    return t3_of(*ov);
  }

  // Action-compatibility grounding: dia[a] P (A & A').
  std::vector<const Literal*> lits;
  if (possible_literal_list(x.f, lits) && lits.size() == 2 &&
      all_of_kind(lits, s_, SymbolKind::Action)) {
    CompatibleKey key(*lits[0], *lits[1]);
    Truth3 v = s_.facts.query(key);
    bool explicit_fact = s_.facts.has_explicit(key);
    ctx.note(depth + 1, to_text(key), explicit_fact ? TraceSource::Fact : TraceSource::Default, v);
    ctx.note(depth, canonical(node), explicit_fact ? TraceSource::Fact : TraceSource::Default, v);
    return v;
  }

  // Universalizability grounding: dia[a] P (forall ... & C & A), answered by
  // the per-condition undermining facts of the plan behind the formula.
  std::vector<const Literal*> body_lits;
  if (universalization_body(x.f, body_lits)) {
    const ActionPlan* plan = ctx.plan_hint;
    if (!plan) {
      // Recover the plan structurally: agent, action and condition multiset.
      for (const ActionPlan& cand : s_.plans) {
        if (!(cand.agent == x.agent)) continue;
        if (body_lits.size() != cand.conditions.size() + 1) continue;
        std::vector<std::string> got, want;
        for (const Literal* l : body_lits) got.push_back(canonical(*l));
        for (const Literal& l : cand.conditions) want.push_back(canonical(l));
        want.push_back(canonical(cand.action));
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        if (got == want) {
          plan = &cand;
          break;
        }
      }
    }
    if (!plan) {
      ctx.note(depth, canonical(node), TraceSource::Default, Truth3::Unknown);
      return Truth3::Unknown;
    }
    Truth3 v = Truth3::True;
    bool any_explicit = false;
    for (const Literal& cond : plan->conditions) {
      UnderminesKey key{plan->id, cond};
      Truth3 undermined = s_.facts.query(key);
      bool explicit_fact = s_.facts.has_explicit(key);
      any_explicit |= explicit_fact;
      ctx.note(depth + 1, to_text(key), explicit_fact ? TraceSource::Fact : TraceSource::Default,
               undermined);
      v = t3_and(v, t3_not(undermined));
    }
    ctx.note(depth, canonical(node), any_explicit ? TraceSource::Fact : TraceSource::Default, v);
    return v;
  }

  // Duality: dia[a] ~S == ~box[a] S.
  if (const FNot* n = x.f->as<FNot>()) {
    FormulaPtr dual = believe_nec(x.agent, n->f);
    return t3_not(eval(dual, ctx, depth));
  }

  // Rational believability of an empirically determinate body follows the
  // body's own evaluation.
  return eval(x.f, ctx, depth + 1);
}

Truth3 Evaluator::eval_believe_nec(const FormulaPtr& node, const FBelieveNec& x, Ctx& ctx,
                                   int depth) const {
  if (auto ov = s_.facts.override_for(node)) {
    ctx.note(depth, canonical(node), TraceSource::Override, t3_of(*ov));
    return t3_of(*ov);
  }

  // Condition-copossibility grounding: box[a] P (C & C'), false outright on
  // a syntactic contradiction, otherwise answered by the copossible facts.
  std::vector<const Literal*> lits;
  if (possible_literal_list(x.f, lits) && all_of_kind(lits, s_, SymbolKind::Condition)) {
    for (size_t i = 0; i < lits.size(); ++i)
      for (size_t j = i + 1; j < lits.size(); ++j)
        if (complementary(*lits[i], *lits[j])) {
          ctx.note(depth, canonical(node), TraceSource::Syntactic, Truth3::False);
          return Truth3::False;
        }

    std::vector<Literal> all;
    all.reserve(lits.size());
    for (const Literal* l : lits) all.push_back(*l);

    if (ctx.pair_first && ctx.pair_second) {
      CopossibleKey key(ctx.pair_first->conditions, ctx.pair_second->conditions);
      Truth3 v = s_.facts.query(key);
      bool explicit_fact = s_.facts.has_explicit(key);
      ctx.note(depth + 1, to_text(key), explicit_fact ? TraceSource::Fact : TraceSource::Default,
               v);
      ctx.note(depth, canonical(node), explicit_fact ? TraceSource::Fact : TraceSource::Default,
               v);
      return v;
    }
    if (auto stored = s_.facts.copossible_by_union(all)) {
      ctx.note(depth, canonical(node), TraceSource::Fact, *stored);
      return *stored;
    }
    Truth3 v = s_.facts.closed_world ? Truth3::True : Truth3::Unknown;
    ctx.note(depth, canonical(node), TraceSource::Default, v);
    return v;
  }

  // Duality: box[a] ~S == ~dia[a] S.
  if (const FNot* n = x.f->as<FNot>()) {
    FormulaPtr dual = believe_poss(x.agent, n->f);
    return t3_not(eval(dual, ctx, depth));
  }

  return eval(x.f, ctx, depth + 1);
}

// ---------------------------------------------------------------------------
// Principle values (recursion-aware)
// ---------------------------------------------------------------------------

Truth3 Evaluator::generalization_value(const ActionPlan& p, Ctx& ctx) const {
  Ctx sub = ctx;
  sub.plan_hint = &p;
  sub.pair_first = sub.pair_second = nullptr;
  return eval(gen_generalization(p), sub, 0);
}

Truth3 Evaluator::utility_value(const ActionPlan& p, Ctx& ctx) const {
  Ctx sub = ctx;
  sub.plan_hint = nullptr;
  sub.pair_first = sub.pair_second = nullptr;
  return eval(gen_utility(p, s_.alternatives(p)), sub, 0);
}

Truth3 Evaluator::autonomy_value(const ActionPlan& p, Ctx& ctx) const {
  Truth3 v = Truth3::True;
  for (const ActionPlan* q : s_.other_agent_plans(p)) {
    FormulaPtr pair = gen_autonomy(p, *q);
    if (ctx.on_chain(q->id)) {
      // q is itself under assessment further up; its standing cannot be used
      // to constrain p here, so the conjunct is presumed satisfied.
      ctx.note(0, canonical(pair), TraceSource::RecursionPresumption, Truth3::True);
      continue;
    }
    Truth3 e;
    if (ctx.budget <= 0) {
      ctx.note(0, "ethical(" + q->id + ")", TraceSource::RecursionPresumption, Truth3::True);
      e = Truth3::True;
    } else {
      Ctx sub = ctx;
      sub.chain.push_back(q->id);
      sub.budget = ctx.budget - 1;
      e = ethicality(*q, sub);
      ctx.note(0, "ethical(" + q->id + ")", TraceSource::Fact, e);
    }
    if (e == Truth3::False) continue;  // interfering with an unethical plan is permitted
    Ctx sub = ctx;
    sub.plan_hint = nullptr;
    sub.pair_first = &p;
    sub.pair_second = q;
    Truth3 pair_value = eval(pair, sub, 0);
    // Either the plans are consistent, or q is not ethical after all.
    v = t3_and(v, t3_or(pair_value, t3_not(e)));
  }
  return v;
}

Truth3 Evaluator::ethicality(const ActionPlan& q, Ctx& ctx) const {
  Truth3 g = generalization_value(q, ctx);
  Truth3 u = utility_value(q, ctx);
  Truth3 a = autonomy_value(q, ctx);
  return t3_and(g, t3_and(u, a));
}

// ---------------------------------------------------------------------------
// Public checks
// ---------------------------------------------------------------------------

Truth3 Evaluator::eval_formula(const FormulaPtr& f, Trace* trace) const {
  Ctx ctx;
  ctx.budget = params_.max_depth;
  ctx.trace = trace;
  return eval(f, ctx, 0);
}

PrincipleResult Evaluator::check_generalization(const ActionPlan& p) const {
  PrincipleResult out;
  out.kind = {Principle::Generalization, ""};
  out.proposition = gen_generalization(p);
  Ctx ctx;
  ctx.chain = {p.id};
  ctx.budget = params_.max_depth;
  ctx.plan_hint = &p;
  ctx.trace = &out.trace;
  out.value = eval(out.proposition, ctx, 0);
  return out;
}

PrincipleResult Evaluator::check_utility(const ActionPlan& p) const {
  PrincipleResult out;
  out.kind = {Principle::Utility, ""};
  out.proposition = gen_utility(p, s_.alternatives(p));
  Ctx ctx;
  ctx.chain = {p.id};
  ctx.budget = params_.max_depth;
  ctx.trace = &out.trace;
  out.value = eval(out.proposition, ctx, 0);
  return out;
}

std::vector<PrincipleResult> Evaluator::autonomy_results(const ActionPlan& p, Ctx& base) const {
  std::vector<PrincipleResult> out;
  for (const ActionPlan* q : s_.other_agent_plans(p)) {
    PrincipleResult r;
    r.kind = {Principle::Autonomy, q->id};
    Ctx filter = base;
    filter.trace = &r.trace;
    if (base.on_chain(q->id)) {
      filter.note(0, canonical(gen_autonomy(p, *q)), TraceSource::RecursionPresumption,
                  Truth3::True);
      r.proposition = truth();
      r.value = Truth3::True;
      out.push_back(std::move(r));
      continue;
    }
    Truth3 e;
    if (base.budget <= 0) {
      filter.note(0, "ethical(" + q->id + ")", TraceSource::RecursionPresumption, Truth3::True);
      e = Truth3::True;
    } else {
      Ctx sub = filter;
      sub.chain.push_back(q->id);
      sub.budget = base.budget - 1;
      e = ethicality(*q, sub);
      filter.note(0, "ethical(" + q->id + ")", TraceSource::Fact, e);
    }
    if (e == Truth3::False) {
      // q imposes no constraint; the test is vacuous.
      r.proposition = truth();
      r.value = Truth3::True;
    } else {
      r.proposition = gen_autonomy(p, *q);
      Ctx sub = filter;
      sub.plan_hint = nullptr;
      sub.pair_first = &p;
      sub.pair_second = q;
      Truth3 pair_value = eval(r.proposition, sub, 0);
      r.value = t3_or(pair_value, t3_not(e));
    }
    out.push_back(std::move(r));
  }
  if (out.empty()) {
    PrincipleResult r;
    r.kind = {Principle::Autonomy, ""};
    r.proposition = truth();
    r.value = Truth3::True;
    out.push_back(std::move(r));
  }
  return out;
}

PrincipleResult Evaluator::check_autonomy(const ActionPlan& p) const {
  Ctx ctx;
  ctx.chain = {p.id};
  ctx.budget = params_.max_depth;
  std::vector<PrincipleResult> parts = autonomy_results(p, ctx);
  PrincipleResult out;
  out.kind = {Principle::Autonomy, ""};
  out.value = Truth3::True;
  std::vector<FormulaPtr> considered;
  for (PrincipleResult& r : parts) {
    out.value = t3_and(out.value, r.value);
    if (!r.proposition->as<FTrue>()) considered.push_back(r.proposition);
    for (TraceEntry& e : r.trace) out.trace.push_back(std::move(e));
  }
  out.proposition = conj(std::move(considered));
  return out;
}

Verdict Evaluator::check_plan(const ActionPlan& p) const {
  Verdict v;
  v.plan = p.id;
  v.results.push_back(check_generalization(p));
  v.results.push_back(check_utility(p));
  Ctx ctx;
  ctx.chain = {p.id};
  ctx.budget = params_.max_depth;
  for (PrincipleResult& r : autonomy_results(p, ctx)) v.results.push_back(std::move(r));

  Truth3 combined = Truth3::True;
  for (const PrincipleResult& r : v.results) combined = t3_and(combined, r.value);
  v.overall = outcome_of(combined);
  return v;
}

std::vector<Verdict> Evaluator::check_all() const {
  std::vector<Verdict> out;
  out.reserve(s_.plans.size());
  for (const ActionPlan& p : s_.plans) out.push_back(check_plan(p));
  return out;
}

}  // namespace deon
