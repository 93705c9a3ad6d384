#include <benchmark/benchmark.h>

#include "crv/theorems.hpp"

using namespace crv;

namespace {

void BM_parse(benchmark::State& state) {
  for (auto _ : state) {
    Expr e = parse("exp(z)/(z^2-3*z+1)+sin(z)*cos(z)", Mode::z());
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(BM_parse);

void BM_eval(benchmark::State& state) {
  Expr e = parse("exp(z)/(z^2-3*z+1)+sin(z)*cos(z)", Mode::z());
  EvalEnv env = EvalEnv::for_z({0.3, -0.2});
  for (auto _ : state) {
    Complex v = eval(e, env);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_eval);

void BM_symbolic_diff(benchmark::State& state) {
  Expr e = parse("exp(z)/(z^2-3*z+1)+sin(z)*cos(z)", Mode::z());
  for (auto _ : state) {
    Expr d = symbolic_diff(e, VarId::Z);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_symbolic_diff);

void BM_contour_circle(benchmark::State& state) {
  Expr f = parse("1/z", Mode::z());
  Path circle = Path::circle(0, 1);
  QuadSpec q{static_cast<int>(state.range(0)), 8, 64};
  for (auto _ : state) {
    Complex v = contour_integral(f, circle, q);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_contour_circle)->Arg(8)->Arg(16)->Arg(32);

void BM_area_disk(benchmark::State& state) {
  Expr g = parse("sin(x)*cos(y)", Mode::planar());
  DiskRegion disk{0, 1};
  QuadSpec q{16, 8, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    Complex v = area_integral(g, disk, q);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_area_disk)->Arg(32)->Arg(64)->Arg(128);

void BM_goursat_exp(benchmark::State& state) {
  Expr f = parse("exp(z)", Mode::z());
  QuadSpec q;
  for (auto _ : state) {
    GoursatCertificate c = goursat_certify(f, {0, 1, 0, 1}, 1e-10, 8, q);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_goursat_exp);

void BM_goursat_conj(benchmark::State& state) {
  Expr f = parse("conj(z)", Mode::z());
  QuadSpec q;
  for (auto _ : state) {
    GoursatCertificate c = goursat_certify(f, {0, 1, 0, 1}, 1e-10,
                                           static_cast<int>(state.range(0)), q);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_goursat_conj)->Arg(3)->Arg(4)->Arg(5);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
