// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <vector>

#include "toeplab/ensemble.hpp"
#include "toeplab/fft.hpp"
#include "toeplab/seeding.hpp"
#include "toeplab/spectra.hpp"
#include "toeplab/toeplitz.hpp"
#include "toeplab/varopt.hpp"

using namespace toeplab;

namespace {

std::vector<cplx> random_vector(std::size_t n) {
  CounterRng rng(1);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(rng.normal(), rng.normal());
  return v;
}

EntryArray gaussian_row(std::size_t n) {
  EntrySpec g;
  return sample_entries(g, n, 3);
}

void BM_Fft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto v = random_vector(n);
  const FftPlan& plan = fft_plan(n);
  for (auto _ : state) {
    plan.forward(v);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Fft)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity(benchmark::oNLogN);

void BM_ApplyPdp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FourierDiagonal d = circle_adjusted_diagonal(gaussian_row(n));
  const auto v = random_vector(2 * n);
  for (auto _ : state) benchmark::DoNotOptimize(apply_pdp(d, v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyPdp)->RangeMultiplier(4)->Range(128, 1 << 15)->Complexity(benchmark::oNLogN);

void BM_ToeplitzMatvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ToeplitzSym t = circle_adjusted_toeplitz(gaussian_row(n));
  std::vector<double> v(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(toeplitz_matvec(t, v));
}
BENCHMARK(BM_ToeplitzMatvec)->RangeMultiplier(4)->Range(128, 1 << 15);

void BM_LanczosTrial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FourierDiagonal d = circle_adjusted_diagonal(gaussian_row(n));
  for (auto _ : state) benchmark::DoNotOptimize(top_eig_lanczos(pdp_operator(d), 1e-10, 4000, 5).lambda_max);
}
BENCHMARK(BM_LanczosTrial)->RangeMultiplier(4)->Range(128, 8192)->Unit(benchmark::kMillisecond);

void BM_DenseTop(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Eigen::MatrixXcd m = materialize_pdp(circle_adjusted_diagonal(gaussian_row(n)));
  for (auto _ : state) benchmark::DoNotOptimize(top_eig_dense(m).lambda_max);
}
BENCHMARK(BM_DenseTop)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_MaximizeK1(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_K1(N).value);
}
BENCHMARK(BM_MaximizeK1)->RangeMultiplier(2)->Range(512, 4096)->Unit(benchmark::kMillisecond);

void BM_PiKNorm(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pi_k_norm(k).value);
}
BENCHMARK(BM_PiKNorm)->RangeMultiplier(4)->Range(4, 64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
