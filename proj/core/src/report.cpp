#include "deon/report.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

namespace deon {

namespace {

std::string conditions_text(const ActionPlan& p) {
  std::string out;
  for (size_t i = 0; i < p.conditions.size(); ++i) {
    if (i) out += " & ";
    out += canonical(p.conditions[i]);
  }
  return out;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

Report build_report(const Scenario& s, const EngineParams& params, double theta,
                    double epsilon) {
  Report r;
  r.scenario = s.name;
  r.closed_world = s.facts.closed_world;
  r.theta = theta;
  r.epsilon = epsilon;
  r.max_depth = params.max_depth;

  Evaluator ev(s, params);
  r.verdicts = ev.check_all();

  std::map<std::string, Outcome> outcome_by_id;
  for (size_t i = 0; i < s.plans.size(); ++i) {
    outcome_by_id[s.plans[i].id] = r.verdicts[i].overall;
    if (r.verdicts[i].overall == Outcome::Ethical) r.survivors.push_back(s.plans[i].id);
  }

  // Choice points: maximal groups of >= 2 plans related by alternatives().
  std::vector<bool> grouped(s.plans.size(), false);
  for (size_t i = 0; i < s.plans.size(); ++i) {
    if (grouped[i]) continue;
    std::vector<const ActionPlan*> group{&s.plans[i]};
    for (size_t j = i + 1; j < s.plans.size(); ++j) {
      if (grouped[j]) continue;
      if (s.plans[j].agent == s.plans[i].agent &&
          same_condition_set(s.plans[j], s.plans[i])) {
        group.push_back(&s.plans[j]);
        grouped[j] = true;
      }
    }
    if (group.size() < 2) continue;
    Choice c;
    c.agent = s.plans[i].agent.name;
    c.conditions = conditions_text(s.plans[i]);
    for (const ActionPlan* p : group) {
      if (outcome_by_id.at(p->id) == Outcome::Ethical) c.survive.push_back(p->id);
      else c.rejected.push_back(p->id);
    }
    r.choices.push_back(std::move(c));
  }
  return r;
}

int exit_code(const Report& r) {
  bool any_unethical = false, any_indeterminate = false;
  for (const Verdict& v : r.verdicts) {
    if (v.overall == Outcome::Unethical) any_unethical = true;
    if (v.overall == Outcome::Indeterminate) any_indeterminate = true;
  }
  if (any_unethical) return 1;
  if (any_indeterminate) return 2;
  return 0;
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << "# deon check report (format " << r.format_version << ")\n";
  os << "scenario: " << r.scenario << "\n";
  os << "engine: world=" << (r.closed_world ? "closed" : "open")
     << " theta=" << format_number(r.theta) << " epsilon=" << format_number(r.epsilon)
     << " max-depth=" << r.max_depth << "\n\n";
  for (const Verdict& v : r.verdicts) {
    os << "plan " << v.plan << ": " << to_string(v.overall) << "\n";
    for (const PrincipleResult& p : v.results) {
      os << "  " << to_string(p.kind.principle);
      if (p.kind.principle == Principle::Autonomy && !p.kind.counterparty.empty())
        os << "[" << p.kind.counterparty << "]";
      os << ": " << to_string(p.value) << "\n";
    }
  }
  for (const Choice& c : r.choices) {
    os << "choice for " << c.agent << " under " << c.conditions << ": survives";
    if (c.survive.empty()) os << " none";
    for (const std::string& id : c.survive) os << " " << id;
    os << "; rejected";
    if (c.rejected.empty()) os << " none";
    for (const std::string& id : c.rejected) os << " " << id;
    os << "\n";
  }
  os << "survivors:";
  if (r.survivors.empty()) os << " none";
  for (const std::string& id : r.survivors) os << " " << id;
  os << "\n";
  return os.str();
}

std::string to_json(const Report& r) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["format_version"] = r.format_version;
  doc["scenario"] = r.scenario;
  doc["engine"] = {{"world", r.closed_world ? "closed" : "open"},
                   {"theta", r.theta},
                   {"epsilon", r.epsilon},
                   {"max_depth", r.max_depth}};
  json plans = json::array();
  for (const Verdict& v : r.verdicts) {
    json plan;
    plan["id"] = v.plan;
    plan["overall"] = to_string(v.overall);
    json results = json::array();
    for (const PrincipleResult& p : v.results) {
      json res;
      res["kind"] = to_string(p.kind.principle);
      if (p.kind.principle == Principle::Autonomy)
        res["counterparty"] = p.kind.counterparty;
      res["proposition"] = canonical(p.proposition);
      res["value"] = to_string(p.value);
      json trace = json::array();
      for (const TraceEntry& t : p.trace) {
        trace.push_back({{"depth", t.depth},
                         {"formula", t.formula},
                         {"source", to_string(t.source)},
                         {"value", to_string(t.value)}});
      }
      res["trace"] = std::move(trace);
      results.push_back(std::move(res));
    }
    plan["results"] = std::move(results);
    plans.push_back(std::move(plan));
  }
  doc["plans"] = std::move(plans);
  json choices = json::array();
  for (const Choice& c : r.choices) {
    choices.push_back({{"agent", c.agent},
                       {"conditions", c.conditions},
                       {"survive", c.survive},
                       {"rejected", c.rejected}});
  }
  doc["choices"] = std::move(choices);
  doc["survivors"] = r.survivors;
  return doc.dump(2) + "\n";
}

}  // namespace deon
