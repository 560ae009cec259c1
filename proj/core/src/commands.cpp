#include "deon/commands.hpp"

#include <ostream>

#include "deon/survey.hpp"

namespace deon {

namespace {

LoadOptions load_options(const CmdOptions& opts) {
  LoadOptions lo;
  lo.theta = opts.theta;
  lo.epsilon = opts.epsilon;
  lo.closed_world = opts.closed_world;
  return lo;
}

std::optional<Scenario> load_or_report(const std::string& path, const CmdOptions& opts,
                                       std::ostream& err) {
  try {
    return load_scenario_file(path, load_options(opts));
  } catch (const ParseError& e) {
    err << path << ":" << e.line << ":" << e.col << ": error: " << e.what() << "\n";
  } catch (const ValidationError& e) {
    err << path << ": error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << path << ": error: " << e.what() << "\n";
  }
  return std::nullopt;
}

void emit_labeled(std::ostream& out, const std::string& plan, const std::string& kind,
                  const FormulaPtr& f) {
  out << plan << "\t" << kind << "\t" << canonical(f) << "\n";
}

// Emits the propositions of one plan. Bare formulas when a single principle
// was requested, labeled lines otherwise.
int emit_plan(const Scenario& s, const ActionPlan& p, const std::string& principle,
              const std::string& vs, bool labeled, std::ostream& out, std::ostream& err) {
  bool want_gen = principle.empty() || principle == "generalization";
  bool want_util = principle.empty() || principle == "utility";
  bool want_auto = principle.empty() || principle == "autonomy";
  if (!want_gen && !want_util && !want_auto) {
    err << "error: unknown principle '" << principle
        << "' (expected generalization, utility or autonomy)\n";
    return 3;
  }
  if (!vs.empty() && principle != "autonomy") {
    err << "error: --vs applies only to --principle autonomy\n";
    return 3;
  }
  auto emit = [&](const std::string& kind, const FormulaPtr& f) {
    if (labeled) emit_labeled(out, p.id, kind, f);
    else out << canonical(f) << "\n";
  };
  if (want_gen) emit("generalization", gen_generalization(p));
  if (want_util) emit("utility", gen_utility(p, s.alternatives(p)));
  if (want_auto) {
    std::vector<const ActionPlan*> others = s.other_agent_plans(p);
    if (!vs.empty()) {
      const ActionPlan* q = s.find_plan(vs);
      if (!q) {
        err << "error: unknown plan '" << vs << "'\n";
        return 3;
      }
      if (q->agent == p.agent) {
        err << "error: autonomy is inter-agent; '" << p.id << "' and '" << vs
            << "' share agent " << p.agent.name << "\n";
        return 3;
      }
      emit("autonomy[" + q->id + "]", gen_autonomy(p, *q));
    } else {
      for (const ActionPlan* q : others) emit("autonomy[" + q->id + "]", gen_autonomy(p, *q));
    }
  }
  return 0;
}

}  // namespace

int cmd_validate(const std::string& path, const CmdOptions& opts, std::ostream& out,
                 std::ostream& err) {
  auto s = load_or_report(path, opts, err);
  if (!s) return 3;
  out << "ok: scenario '" << s->name << "' (" << (s->facts.closed_world ? "closed" : "open")
      << " world): " << s->agents.size() << " agent(s), " << s->signature.symbols().size()
      << " symbol(s), " << s->plans.size() << " plan(s)\n";
  out << "note: whether each plan's conditions are the most general justifying set is not "
         "machine-checked; it is the scenario author's responsibility\n";
  return 0;
}

int cmd_gen(const std::string& path, const CmdOptions& opts, const std::string& plan,
            const std::string& principle, const std::string& vs, bool all, std::ostream& out,
            std::ostream& err) {
  auto s = load_or_report(path, opts, err);
  if (!s) return 3;
  if (all) {
    for (const ActionPlan& p : s->plans) {
      int rc = emit_plan(*s, p, "", "", /*labeled=*/true, out, err);
      if (rc != 0) return rc;
    }
    return 0;
  }
  if (plan.empty()) {
    err << "error: --plan or --all is required\n";
    return 3;
  }
  const ActionPlan* p = s->find_plan(plan);
  if (!p) {
    err << "error: unknown plan '" << plan << "'\n";
    return 3;
  }
  return emit_plan(*s, *p, principle, vs, /*labeled=*/principle.empty(), out, err);
}

int cmd_check(const std::string& path, const CmdOptions& opts, std::ostream& out,
              std::ostream& err) {
  auto s = load_or_report(path, opts, err);
  if (!s) return 3;
  EngineParams params{opts.max_depth};
  Report r = build_report(*s, params, opts.theta.value_or(0.5), opts.epsilon.value_or(0.05));
  out << (opts.json ? to_json(r) : to_text(r));
  return exit_code(r);
}

int cmd_explain(const std::string& path, const CmdOptions& opts, const std::string& plan,
                std::ostream& out, std::ostream& err) {
  auto s = load_or_report(path, opts, err);
  if (!s) return 3;
  const ActionPlan* p = s->find_plan(plan);
  if (!p) {
    err << "error: unknown plan '" << plan << "'\n";
    return 3;
  }
  Evaluator ev(*s, EngineParams{opts.max_depth});
  Verdict v = ev.check_plan(*p);
  out << "plan " << p->id << " (agent " << p->agent.name << ")\n";
  for (const PrincipleResult& r : v.results) {
    out << "  " << to_string(r.kind.principle);
    if (r.kind.principle == Principle::Autonomy && !r.kind.counterparty.empty())
      out << "[" << r.kind.counterparty << "]";
    out << ": " << to_string(r.value) << "\n";
    out << "    proposition: " << canonical(r.proposition) << "\n";
    for (const TraceEntry& t : r.trace) out << "    " << to_line(t) << "\n";
  }
  out << "verdict: " << to_string(v.overall) << "\n";
  return 0;
}

}  // namespace deon
