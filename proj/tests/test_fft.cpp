// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include <vector>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "toeplab/fft.hpp"
#include "toeplab/seeding.hpp"

using namespace toeplab;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(rng.normal(), rng.normal());
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("radix-2 transform matches the direct sum") {
  for (std::size_t n : {1, 2, 4, 8, 64, 256, 1024}) {
    for (int sign : {-1, 1}) {
      auto x = random_vector(n, n * 7 + static_cast<std::uint64_t>(sign + 1));
      const auto expected = oracle::dft(x, sign);
      fft_plan(n).transform(x, static_cast<FftSign>(sign));
      CHECK(max_diff(x, expected) <= 1e-11 * static_cast<double>(n));
    }
  }
}

TEST_CASE("arbitrary lengths fall back to the direct transform") {
  for (std::size_t n : {3, 5, 12, 33}) {
    auto x = random_vector(n, n);
    const auto expected = oracle::dft(x, -1);
    dft(x, FftSign::negative);
    CHECK(max_diff(x, expected) <= 1e-11);
  }
}

TEST_CASE("forward then inverse scales by the length") {
  auto x = random_vector(512, 3);
  const auto original = x;
  const FftPlan& plan = fft_plan(512);
  plan.forward(x);
  plan.inverse(x);
  for (auto& v : x) v /= 512.0;
  CHECK(max_diff(x, original) <= 1e-13);
}

TEST_CASE("plans reject lengths that are not powers of two") {
  CHECK_THROWS_AS(FftPlan(12), std::invalid_argument);
  CHECK(&fft_plan(64) == &fft_plan(64));
  CHECK(next_power_of_two(65) == 128);
  CHECK(is_power_of_two(1));
  CHECK_FALSE(is_power_of_two(0));
}
