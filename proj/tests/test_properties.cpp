// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

// Randomized checks of structural invariants. Each case draws its inputs from
// a fixed seed so failures reproduce.

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "toeplab/blocks.hpp"
#include "toeplab/ensemble.hpp"
#include "toeplab/seeding.hpp"
#include "toeplab/spectra.hpp"
#include "toeplab/toeplitz.hpp"
#include "toeplab/varopt.hpp"

using namespace toeplab;

namespace {

FourierDiagonal random_diagonal(std::size_t n, CounterRng& rng) {
  FourierDiagonal d;
  d.d.resize(2 * n);
  for (auto& x : d.d) x = rng.normal();
  return d;
}

double top(const FourierDiagonal& d) { return oracle::top_eigenvalue(materialize_pdp(d)); }

}  // namespace

TEST_CASE("PDP is Hermitian, bounded by max d, and monotone in d") {
  CounterRng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = std::size_t{2} << (trial % 6);
    FourierDiagonal d = random_diagonal(n, rng);
    const Eigen::MatrixXcd m = materialize_pdp(d);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-13);
    const double lambda = oracle::top_eigenvalue(m);
    CHECK(lambda <= *std::max_element(d.d.begin(), d.d.end()) + 1e-12);
    FourierDiagonal bigger = d;
    for (auto& x : bigger.d) x += std::abs(rng.normal());
    CHECK(top(bigger) >= lambda - 1e-12);
    FourierDiagonal positive = d;
    for (auto& x : positive.d) x = std::abs(x);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(materialize_pdp(positive), Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  }
}

TEST_CASE("zeroing small diagonal entries moves the top eigenvalue by at most the level") {
  CounterRng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = std::size_t{8} << (trial % 4);
    const FourierDiagonal d = random_diagonal(n, rng);
    const double eps = 0.1 + 0.1 * (trial % 5);
    const ThresholdSet s = threshold_set(d, eps);
    CHECK(std::abs(top(d) - top(sparse_diag(d, s))) <= s.threshold + 1e-12);
  }
}

TEST_CASE("circle-adjusted diagonal is real, palindromic and shift-covariant in b_n") {
  EntrySpec r;
  r.family = Family::rademacher;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = std::size_t{3} + seed * 5;
    const EntryArray e = sample_entries(r, n, seed);
    const FourierDiagonal d = circle_adjusted_diagonal(e);
    for (std::size_t j = 1; j < n; ++j) CHECK(d.d[j] == doctest::Approx(d.d[2 * n - j]).epsilon(1e-12));
    // Changing b_n by c adds c (-1)^j / sqrt(2n).
    const ToeplitzSym t = circle_adjusted_toeplitz(e);
    const FourierDiagonal shifted = fourier_diagonal(embed_circulant(t, 1.0 + std::sqrt(2.0) * e.values[n]),
                                                     DiagonalVariant::circle_adjusted);
    for (std::size_t j = 0; j < 2 * n; ++j) {
      const double expected = d.d[j] + ((j % 2) ? -1.0 : 1.0) / std::sqrt(2.0 * n);
      CHECK(shifted.d[j] == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("autocorrelation is even, peaks at zero lag and obeys Young's bound") {
  CounterRng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t N = 16 + 8 * static_cast<std::size_t>(trial);
    GridProfile f = window_profile(1.0, N);
    for (auto& v : f.values) v = rng.uniform_open();
    normalize(f);
    const GridProfile a = autocorr(f);
    const std::size_t mid = N;
    CHECK(a.values[mid] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t m = 0; m <= N; ++m) {
      CHECK(a.values[mid + m] == doctest::Approx(a.values[mid - m]).epsilon(1e-12).scale(1.0));
      CHECK(a.values[mid + m] <= a.values[mid] + 1e-12);
    }
    // ||f * f||_2 <= ||f||_1 ||f||_2 <= sqrt(width).
    CHECK(objective_K(f) <= 1.0 + 1e-12);
  }
}

TEST_CASE("brick layouts are valid for every n and scale") {
  for (std::size_t n = 8; n <= 600; n += 13) {
    for (std::size_t r : {std::size_t{1}, std::size_t{3}, n / 4 + 1, n}) {
      if (r == 0 || r > n) continue;
      CAPTURE(n);
      CAPTURE(r);
      const BrickLayout l = build_bricks_with_scale(n, r);
      CHECK(check_layout(l).ok());
    }
  }
}

TEST_CASE("partition parts are unions of bricks and visibility is recorded per brick") {
  CounterRng rng(5);
  const BrickLayout layout = build_bricks_with_scale(512, 16);
  for (int trial = 0; trial < 20; ++trial) {
    FourierDiagonal d = random_diagonal(512, rng);
    const ThresholdSet s = threshold_set(d, 0.6);
    const PartitionLayout p = partition(layout, s);
    for (std::size_t b = 0; b < layout.bricks.size(); ++b) {
      CHECK(p.visible[b] == (s.count_in(layout.bricks[b].first, layout.bricks[b].last) > 0));
    }
    CHECK(check_admissibility(p).parts_refine_bricks);
  }
}

TEST_CASE("derive_seed is injective in the last id for fixed prefixes") {
  for (std::uint64_t prefix = 0; prefix < 50; ++prefix) {
    std::vector<std::uint64_t> s;
    for (std::uint64_t id = 0; id < 2000; ++id) s.push_back(derive_seed(1, {prefix, id}));
    std::sort(s.begin(), s.end());
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  }
}
