#include <benchmark/benchmark.h>

#include "qanneal/compiler.h"
#include "qanneal/engine.h"

namespace {

using namespace qanneal;

void BM_MatrixExpHermitian(benchmark::State& state) {
  const Operator27 h = h_field(100.0);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exp(h, Complex(0.0, -0.01)));
}
BENCHMARK(BM_MatrixExpHermitian);

void BM_CompileProblemStep(benchmark::State& state) {
  const AnnealConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(compile_problem_step(7, cfg));
}
BENCHMARK(BM_CompileProblemStep);

void BM_EvaluateProblemStep(benchmark::State& state) {
  const AnnealConfig cfg;
  const PulseContext ctx{cfg.couplings, cfg.params};
  const PulseProgram prog = compile_problem_step(7, cfg).program;
  state.counters["primitives"] = static_cast<double>(prog.steps.size());
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_program(prog, ctx));
}
BENCHMARK(BM_EvaluateProblemStep);

void BM_Run(benchmark::State& state) {
  AnnealConfig cfg;
  cfg.n_steps = static_cast<int>(state.range(0));
  cfg.mode.propagation = state.range(1) ? Propagation::Compiled : Propagation::Ideal;
  for (auto _ : state) benchmark::DoNotOptimize(run(cfg).fidelity);
}
BENCHMARK(BM_Run)->ArgsProduct({{10, 100}, {0, 1}})->ArgNames({"N", "compiled"});

}  // namespace

BENCHMARK_MAIN();
