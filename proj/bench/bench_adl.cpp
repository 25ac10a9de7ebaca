// Serial reference vs OpenMP kernel for the three parallel paths.

#include <benchmark/benchmark.h>

#include "adl/consistency.hpp"
#include "adl/evaluator.hpp"
#include "adl/functional.hpp"
#include "adl/knowledge_base.hpp"
#include "support.hpp"

using namespace adl;
namespace ts = testing_support;

namespace {

BeliefModel sized_model(std::size_t n) {
  ts::Rng rng(7);
  ts::ModelShape shape;
  shape.min_individuals = shape.max_individuals = n;
  shape.random_id = false;
  return ts::random_model(rng, shape);
}

const Formula& workload() {
  static const Formula f = parse_formula("E_r ([A | B]_s ? C : E_s A) & (A | [B | C]_r)");
  return f;
}

void BM_EvaluateAll(benchmark::State& state) {
  BeliefModel m = sized_model(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_all(m, workload()));
}

void BM_EvaluateAllSerial(benchmark::State& state) {
  BeliefModel m = sized_model(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_all_serial(m, workload()));
}

const Concept& mc_concept() {
  static const Concept c = parse_concept("Ex_r (A & Ex_s B) | !Ex_s !(C | !A)");
  return c;
}

void BM_MonteCarlo(benchmark::State& state) {
  BeliefModel m = sized_model(6);
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_measure(m, 0, mc_concept(), state.range(0), 3));
}

void BM_MonteCarloSerial(benchmark::State& state) {
  BeliefModel m = sized_model(6);
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_measure_serial(m, 0, mc_concept(), state.range(0), 3));
}

ConstraintSystem virus_system() { return generate_constraints(simplify(load_kb(ADL_FIXTURES "/virus.akb")).kb); }

SolveOptions bench_options() {
  SolveOptions o;
  o.starts = 16;
  o.seed = 5;
  return o;
}

void BM_Solve(benchmark::State& state) {
  ConstraintSystem cs = virus_system();
  for (auto _ : state) benchmark::DoNotOptimize(solve(cs, bench_options()));
}

void BM_SolveSerial(benchmark::State& state) {
  ConstraintSystem cs = virus_system();
  for (auto _ : state) benchmark::DoNotOptimize(solve_serial(cs, bench_options()));
}

}  // namespace

BENCHMARK(BM_EvaluateAll)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EvaluateAllSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarlo)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarloSerial)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Solve)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SolveSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
