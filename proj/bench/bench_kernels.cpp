#include <benchmark/benchmark.h>

#include "geoaudit/audit.hpp"

using namespace geoaudit;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_Integrate(benchmark::State& state) {
  const SurfaceSpec torus = builtin_surface("torus", {});
  const Expr g = parse_expr("exp(x)*(1+0.3*z)+sin(x+2*y)", 3);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(torus, g, 96, exec_of(state)));
}

void BM_EhrenfestAudit(benchmark::State& state) {
  const SurfaceSpec torus = builtin_surface("torus", {});
  const auto pts = sample_points(torus, 50, 7);
  const auto psis = default_wavefields(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ehrenfest_audit(torus, {2.0, 1.0}, psis, pts, {}, exec_of(state)).max_abs_f);
  }
}

void BM_OperatorDefects(benchmark::State& state) {
  const SurfaceSpec torus = builtin_surface("torus", {});
  const WaveField phi{"x", ComplexExpr(parse_expr("x", 3))};
  const WaveField psi{"1", ComplexExpr(Expr::constant(1.0, 3))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(operator_defects(torus, {}, {"p", "S", "H"}, phi, psi, 48, exec_of(state)).defects);
  }
}

}  // namespace

// Arg 0 = serial reference path, 1 = OpenMP path.
BENCHMARK(BM_Integrate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EhrenfestAudit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OperatorDefects)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
}
