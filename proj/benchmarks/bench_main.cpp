#include <benchmark/benchmark.h>

#include <cstddef>
#include <string>

#include "teamcheck/evaluator.hpp"
#include "teamcheck/generators.hpp"
#include "teamcheck/graph.hpp"
#include "teamcheck/reductions.hpp"
#include "teamcheck/wt_solver.hpp"

namespace {

tc::Graph random_graph(std::size_t n, unsigned density) {
  auto rng = tc::Rng::for_case(1, "bench-graph", n);
  tc::Graph graph(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.chance(density)) graph.add_edge(u, v);
  return graph;
}

void BM_DomsetBrute(benchmark::State& state) {
  auto graph = random_graph(state.range(0), 35);
  const std::size_t k = state.range(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(tc::graph_brute(tc::GraphProblem::kDominatingSet, graph, k));
}

void domset_solve(benchmark::State& state, bool fast) {
  auto e = tc::encode_domset(random_graph(state.range(0), 35), state.range(1));
  tc::WtSolveOptions options;
  options.fast_path = fast;
  for (auto _ : state) benchmark::DoNotOptimize(tc::wt_search(e.instance, options).witness);
}

void BM_DomsetFast(benchmark::State& state) { domset_solve(state, true); }
void BM_DomsetGeneric(benchmark::State& state) { domset_solve(state, false); }

void BM_CliqueSolve(benchmark::State& state) {
  auto e = tc::encode_clique(random_graph(state.range(0), 60), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(tc::wt_search(e.instance).witness);
}

void BM_WsatBrute(benchmark::State& state) {
  auto rng = tc::Rng::for_case(1, "bench-wsat", state.range(0));
  auto psi = tc::random_gamma(rng, 2, state.range(0), tc::Polarity::kPositive);
  const std::size_t k = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(tc::wsat_brute(psi, k));
}

void BM_WsatSolve(benchmark::State& state) {
  auto rng = tc::Rng::for_case(1, "bench-wsat", state.range(0));
  auto psi = tc::random_gamma(rng, 2, state.range(0), tc::Polarity::kPositive);
  auto e = tc::encode_wsat(psi, state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(tc::wt_search(e.instance).witness);
}

void BM_MaxSubteam(benchmark::State& state) {
  const std::size_t n = state.range(0);
  auto a = tc::graph_structure(random_graph(n, 50));
  auto phi = tc::parse_formula(tc::kCliqueFormula);
  auto rng = tc::Rng::for_case(1, "bench-team", n);
  auto team = tc::random_team(rng, n, {"x", "y"}, n * n);
  for (auto _ : state) benchmark::DoNotOptimize(tc::max_subteam(a, team, phi));
}

void BM_EvalDependence(benchmark::State& state) {
  const std::size_t n = state.range(0);
  auto rng = tc::Rng::for_case(1, "bench-dep", n);
  auto a = tc::random_structure(rng, n);
  auto phi = tc::parse_formula("exists z forall w (dep(z,w;x) | (dep(x,z;y) | z=y))");
  auto team = tc::random_team(rng, n, {"x", "y"}, n * n / 2 + 1);
  for (auto _ : state) benchmark::DoNotOptimize(tc::eval(a, team, phi));
}

}  // namespace

BENCHMARK(BM_DomsetBrute)->ArgsProduct({{6, 8, 10}, {1, 2, 3}});
BENCHMARK(BM_DomsetFast)->ArgsProduct({{6, 8, 10}, {1, 2, 3}});
BENCHMARK(BM_DomsetGeneric)->ArgsProduct({{6, 8}, {1, 2}});
BENCHMARK(BM_CliqueSolve)->ArgsProduct({{5, 7}, {2, 3}});
BENCHMARK(BM_WsatBrute)->ArgsProduct({{6, 10, 14}, {2, 3}});
BENCHMARK(BM_WsatSolve)->ArgsProduct({{4, 6}, {2}});
BENCHMARK(BM_MaxSubteam)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(BM_EvalDependence)->Arg(2)->Arg(3);
BENCHMARK_MAIN();
