#include <benchmark/benchmark.h>

#include <sstream>

#include "deon/evaluator.hpp"
#include "deon/report.hpp"
#include "deon/survey.hpp"

namespace {

// Self-contained copy of the pedestrian-style scenario so the benchmarks do
// not depend on test fixture paths.
const char* kScenario = R"(scenario "bench"
world closed
agent a ""
agent b ""
agent c ""
predicate C10/2 ""
predicate C11/2 ""
predicate C12/1 ""
predicate C13/1 ""
action A7/1 ""
action A8/1 ""
action A9/1 ""
plan brake: a: C10(a,b) & C11(a,c) => A7(a)
plan no_brake: a: C10(a,b) & C11(a,c) => ~A7(a)
plan ped_walk: b: C12(b) => A8(b)
plan follow: c: C13(c) => A9(c)
fact compatible(~A7(a),A8(b)) = false
fact u(C10(a,b),C11(a,c),A7(a)) = 0.8
fact u(C10(a,b),C11(a,c),~A7(a)) = 0.1
)";

const char* kFormula =
    "dia[a] P (forall x.(C10(x,b) & C11(x,c) -> A7(x)) & C10(a,b) & C11(a,c) & A7(a))";

void BM_ParseFormula(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(deon::parse_formula(kFormula));
}
BENCHMARK(BM_ParseFormula);

void BM_SerializeFormula(benchmark::State& state) {
  deon::FormulaPtr f = deon::parse_formula(kFormula);
  for (auto _ : state) benchmark::DoNotOptimize(deon::canonical(f));
}
BENCHMARK(BM_SerializeFormula);

void BM_ParseScenario(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(deon::parse_scenario(kScenario));
}
BENCHMARK(BM_ParseScenario);

void BM_CheckPlanRecursive(benchmark::State& state) {
  deon::Scenario s = deon::parse_scenario(kScenario);
  deon::Evaluator ev(s, deon::EngineParams{static_cast<int>(state.range(0))});
  const deon::ActionPlan& p = *s.find_plan("no_brake");
  for (auto _ : state) benchmark::DoNotOptimize(ev.check_plan(p));
}
BENCHMARK(BM_CheckPlanRecursive)->Arg(2)->Arg(8)->Arg(16);

void BM_FullReport(benchmark::State& state) {
  deon::Scenario s = deon::parse_scenario(kScenario);
  for (auto _ : state)
    benchmark::DoNotOptimize(deon::build_report(s, deon::EngineParams{}, 0.5, 0.05));
}
BENCHMARK(BM_FullReport);

void BM_SurveyAggregation(benchmark::State& state) {
  std::vector<deon::SurveyRecord> records;
  records.reserve(static_cast<size_t>(state.range(0)));
  for (long i = 0; i < state.range(0); ++i)
    records.push_back({"r" + std::to_string(i), "undermines(brake,C10(a,b))", i % 3 != 0});
  for (auto _ : state)
    benchmark::DoNotOptimize(deon::aggregate_survey(records, 0.5, 0.05));
}
BENCHMARK(BM_SurveyAggregation)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
