#include <benchmark/benchmark.h>

#include <random>

#include "lsfrp/colgen.hpp"
#include "lsfrp/formulations.hpp"
#include "lsfrp/generator.hpp"
#include "lsfrp/lazy.hpp"
#include "lsfrp/lp/mip.hpp"
#include "lsfrp/oracle.hpp"
#include "lsfrp/solver.hpp"

using namespace lsfrp;

namespace {

// Oracle-sized family: 3 ships, 14 visits, 12 demands.
Instance small_instance(std::uint64_t seed) {
  GeneratorParams p;
  p.seed = seed;
  p.ship_types = 2;
  p.empty_points = 2;
  return generate_random(p);
}

// 3 ships, 24 visits, 18 demands.
Instance medium_instance(std::uint64_t seed) {
  GeneratorParams p;
  p.seed = seed;
  p.visits = 24;
  p.demands = 18;
  p.arc_density = 0.5;
  return generate_random(p);
}

// 3 ships, 36 visits, 28 demands.
Instance large_instance(std::uint64_t seed) {
  GeneratorParams p;
  p.seed = seed;
  p.visits = 36;
  p.demands = 28;
  p.arc_density = 0.5;
  return generate_random(p);
}

void BM_Generate(benchmark::State& state) {
  GeneratorParams p;
  p.visits = static_cast<int>(state.range(0));
  p.demands = p.visits;
  for (auto _ : state) {
    ++p.seed;
    benchmark::DoNotOptimize(generate_random(p));
  }
}
BENCHMARK(BM_Generate)->Arg(14)->Arg(36)->Arg(100);

void BM_SimplexRevisedRelaxation(benchmark::State& state) {
  const Instance in = medium_instance(7);
  const ReachIndex reach(in);
  const ArcFlowModel built = build_revised(reach);
  state.counters["rows"] = built.model.num_rows();
  state.counters["cols"] = built.model.num_vars();
  for (auto _ : state) benchmark::DoNotOptimize(lp::solve_lp(built.model));
}
BENCHMARK(BM_SimplexRevisedRelaxation)->Unit(benchmark::kMillisecond);

void BM_Knapsack(benchmark::State& state) {
  std::mt19937 rng(3);
  lp::LinearModel m;
  std::vector<lp::Term> row;
  double total = 0;
  for (int j = 0; j < state.range(0); ++j) {
    const double w = std::uniform_int_distribution<int>(10, 60)(rng);
    m.add_variable(0, 1, w + std::uniform_int_distribution<int>(0, 10)(rng), true);
    row.push_back({j, w});
    total += w;
  }
  m.add_row(row, lp::Sense::le, std::floor(total / 2));
  for (auto _ : state) {
    lp::LinearModel copy = m;
    benchmark::DoNotOptimize(lp::solve_mip(copy));
  }
}
BENCHMARK(BM_Knapsack)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void run_method(benchmark::State& state, Method method, Instance (*make)(std::uint64_t)) {
  const Instance in = make(static_cast<std::uint64_t>(state.range(0)));
  double objective = 0;
  for (auto _ : state) {
    const Solution sol = solve(in, method);
    objective = sol.objective;
    state.counters["columns"] = static_cast<double>(sol.diagnostics.columns_generated);
    state.counters["cuts"] = sol.diagnostics.cuts_dc + sol.diagnostics.cuts_rf;
  }
  state.counters["objective"] = objective;
}

void BM_Small_Reduced(benchmark::State& s) { run_method(s, Method::reduced, small_instance); }
void BM_Small_ReducedTight(benchmark::State& s) { run_method(s, Method::reduced_tight, small_instance); }
void BM_Small_Revised(benchmark::State& s) { run_method(s, Method::revised, small_instance); }
void BM_Small_Colgen(benchmark::State& s) { run_method(s, Method::colgen, small_instance); }
void BM_Small_ColgenLazy(benchmark::State& s) { run_method(s, Method::colgen_lazy, small_instance); }
void BM_Small_Oracle(benchmark::State& s) { run_method(s, Method::oracle, small_instance); }
BENCHMARK(BM_Small_Reduced)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Small_ReducedTight)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Small_Revised)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Small_Colgen)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Small_ColgenLazy)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Small_Oracle)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

// The plain reduced model needs tens of seconds here and is left out.
void BM_Medium_ReducedTight(benchmark::State& s) { run_method(s, Method::reduced_tight, medium_instance); }
void BM_Medium_Revised(benchmark::State& s) { run_method(s, Method::revised, medium_instance); }
void BM_Medium_Colgen(benchmark::State& s) { run_method(s, Method::colgen, medium_instance); }
void BM_Medium_ColgenLazy(benchmark::State& s) { run_method(s, Method::colgen_lazy, medium_instance); }
BENCHMARK(BM_Medium_ReducedTight)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Medium_Revised)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Medium_Colgen)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Medium_ColgenLazy)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_Large_ColgenLazy(benchmark::State& s) { run_method(s, Method::colgen_lazy, large_instance); }
BENCHMARK(BM_Large_ColgenLazy)->Arg(7)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
