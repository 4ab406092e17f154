#include <benchmark/benchmark.h>

#include "rotamime/bifurcation.hpp"

using namespace rotamime;

namespace {

const MapSpec kSpec = make_spec(KernelTag::Eos, 110.0, 3, 11);

void BM_MapEval(benchmark::State& state) {
  double x = 0.05;
  for (auto _ : state) {
    x = eval_F(kSpec, x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_MapEval);

void BM_MapDerivatives(benchmark::State& state) {
  double acc = 0.0;
  for (auto _ : state) {
    acc += eval_F_deriv(kSpec, 0.05, 1);
    acc += eval_F_deriv(kSpec, 0.05, 2);
    acc += eval_F_deriv(kSpec, 0.05, 3);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_MapDerivatives);

void BM_Schwarzian(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(schwarzian(kSpec, 0.05));
  }
}
BENCHMARK(BM_Schwarzian);

void BM_Membership(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_membership(kSpec).member);
  }
}
BENCHMARK(BM_Membership);

void BM_OrbitSearch(benchmark::State& state) {
  OrbitOptions opts;
  opts.transient = state.range(0);
  const double seed = seed_point(kSpec, SeedKind::Plus);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_attracting_orbit(kSpec, seed, opts).period);
  }
}
BENCHMARK(BM_OrbitSearch)->Arg(10000)->Arg(100000);

void BM_Certificate(benchmark::State& state) {
  const MapSpec spec = make_spec(KernelTag::Eos, 170.0, 3, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(orbit_certificate(spec).valid);
  }
}
BENCHMARK(BM_Certificate);

void BM_ScanGridPoint(benchmark::State& state) {
  ScanOptions opts;
  opts.transient = 100000;
  opts.n_samples = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        scan(Rational{3, 11}, KernelTag::Eos, Interval{110.0, 110.0}, 1.0, opts).size());
  }
}
BENCHMARK(BM_ScanGridPoint);

void BM_FareyParents(benchmark::State& state) {
  const Rational f{355, 1013};
  for (auto _ : state) {
    benchmark::DoNotOptimize(farey_parents(f).second.den);
  }
}
BENCHMARK(BM_FareyParents);

} // namespace

BENCHMARK_MAIN();
