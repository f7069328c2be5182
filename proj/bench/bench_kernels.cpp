// Serial reference kernels against their OpenMP versions. Thread count
// follows IGA_MORTAR_THREADS or the OpenMP default.

#include <benchmark/benchmark.h>

#include "c1mortar/builtin_geometries.hpp"
#include "c1mortar/infsup.hpp"
#include "c1mortar/pipeline.hpp"

using namespace c1mortar;

namespace {

ExecutionPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecutionPolicy::serial : ExecutionPolicy::parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial"
                                     : "parallel/" + std::to_string(thread_count()) + "t");
}

void BM_StiffnessAssembly(benchmark::State& state) {
  const auto topo = builtin_geometry("quartercircle3");
  const Discretization disc = make_discretization(topo, 3, static_cast<int>(state.range(1)));
  const ManufacturedSolution m = cos_cos_solution();
  for (auto _ : state) {
    StiffnessLoad sl = assemble_stiffness_load(topo, disc, m.bilaplacian, policy_of(state));
    benchmark::DoNotOptimize(sl.A.valuePtr());
  }
  label(state);
  state.counters["dofs"] = disc.total_dofs();
}

void BM_ErrorNorms(benchmark::State& state) {
  const auto topo = builtin_geometry("quartercircle3");
  RunConfig cfg;
  cfg.vertex_mode = VertexMode::c0;
  RunArtifacts a;
  run_solve(cfg, topo, static_cast<int>(state.range(1)), &a);
  const ManufacturedSolution m = cos_cos_solution();
  for (auto _ : state) {
    ErrorReport e = compute_errors(topo, a.disc, a.solution.u_full, m, policy_of(state));
    benchmark::DoNotOptimize(e);
  }
  label(state);
}

void BM_RandomMeshTrials(benchmark::State& state) {
  RandomMeshSpec spec;
  spec.trials = static_cast<int>(state.range(1));
  for (auto _ : state) {
    RandomMeshSummary s = random_mesh_study(3, spec, policy_of(state));
    benchmark::DoNotOptimize(s.mean);
  }
  label(state);
}

void BM_FullSolve(benchmark::State& state) {
  const auto topo = builtin_geometry("square2");
  RunConfig cfg;
  cfg.degree = 4;
  cfg.policy = policy_of(state);
  for (auto _ : state) {
    RunResult r = run_solve(cfg, topo, static_cast<int>(state.range(1)));
    benchmark::DoNotOptimize(r);
  }
  label(state);
}

}  // namespace

BENCHMARK(BM_StiffnessAssembly)->ArgsProduct({{0, 1}, {4, 5}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ErrorNorms)->ArgsProduct({{0, 1}, {4, 5}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RandomMeshTrials)->ArgsProduct({{0, 1}, {1000}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FullSolve)->ArgsProduct({{0, 1}, {5}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
