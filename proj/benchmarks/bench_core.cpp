#include <benchmark/benchmark.h>

#include "modelspace/dual_operator.hpp"
#include "modelspace/model_space.hpp"
#include "modelspace/random.hpp"
#include "modelspace/subspaces.hpp"

using namespace modelspace;

namespace {

const BlaschkeProduct& test_function() {
  static const BlaschkeProduct u(Complex(1, 0), {Complex(0.5, 0), Complex(-0.3, 0.2)});
  return u;
}

void BM_ProjectFormula(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelSpace model(test_function(), n + 16);
  Rng rng(1234);
  const FourierVector f = random_fourier(rng, FrequencyBand{-n, n});
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.project(f, ProjectionMethod::Formula));
  }
}
BENCHMARK(BM_ProjectFormula)->Arg(32)->Arg(64)->Arg(128);

void BM_ProjectBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelSpace model(test_function(), n + 16);
  Rng rng(1234);
  const FourierVector f = random_fourier(rng, FrequencyBand{-n, n});
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.project(f, ProjectionMethod::Basis));
  }
}
BENCHMARK(BM_ProjectBasis)->Arg(32)->Arg(64)->Arg(128);

void BM_BuildCompression(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const AmbientBasis basis(test_function(), n);
    benchmark::DoNotOptimize(build_D(basis));
  }
}
BENCHMARK(BM_BuildCompression)->Arg(32)->Arg(64)->Arg(128);

void BM_Orthonormalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(99);
  CMatrix a(2 * n, n);
  for (int j = 0; j < n; ++j) a.col(j) = random_cvector(rng, 2 * n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mgs_orthonormalize(a, 1e-10));
  }
}
BENCHMARK(BM_Orthonormalize)->Arg(32)->Arg(64)->Arg(128);

void BM_PullbackSubspace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AmbientBasis basis(BlaschkeProduct::moebius(Complex(0.5, 0)), n);
  const PullbackSymbol w = PullbackSymbol::quotient(
      BlaschkeProduct::moebius(Complex(1.0 / 3.0, 0)), BlaschkeProduct::power_of_z(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pullback_V_inv(basis, w));
  }
}
BENCHMARK(BM_PullbackSubspace)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
