// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "toeplab/ensemble.hpp"
#include "toeplab/seeding.hpp"
#include "toeplab/toeplitz.hpp"

using namespace toeplab;

namespace {

EntryArray gaussian_row(std::size_t n, std::uint64_t seed) {
  EntrySpec g;
  return sample_entries(g, n, seed);
}

std::vector<cplx> probe(std::size_t dim, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<cplx> v(dim);
  for (auto& x : v) x = cplx(rng.normal(), rng.normal());
  return v;
}

}  // namespace

TEST_CASE("circle-adjusted diagonal matches the cosine sum") {
  for (std::size_t n : {3, 4, 7, 16, 64, 256}) {
    const EntryArray e = gaussian_row(n, n);
    const FourierDiagonal d = circle_adjusted_diagonal(e);
    const std::vector<double> expected = oracle::circle_diagonal(e.values, n);
    REQUIRE(d.d.size() == 2 * n);
    for (std::size_t j = 0; j < 2 * n; ++j) CHECK(d.d[j] == doctest::Approx(expected[j]).epsilon(1e-12));
    // Palindromic: d_j = d_{2n-j}.
    for (std::size_t j = 1; j < n; ++j) CHECK(d.d[j] == doctest::Approx(d.d[2 * n - j]).epsilon(1e-12));
  }
}

TEST_CASE("fourier_diagonal equals a direct transform of the circulant row") {
  const EntryArray e = gaussian_row(32, 4);
  const ToeplitzSym t = circle_adjusted_toeplitz(e);
  const CirculantCoeffs c = embed_circulant(t, 0.7);
  std::vector<cplx> row(c.b.begin(), c.b.end());
  const auto direct = oracle::dft(row, +1);
  const FourierDiagonal d = fourier_diagonal(c);
  for (std::size_t j = 0; j < 64; ++j) {
    CHECK(d.d[j] == doctest::Approx(direct[j].real() / 8.0).epsilon(1e-12));
  }
}

TEST_CASE("toeplitz_matvec matches the dense product") {
  for (std::size_t n : {1, 2, 5, 64, 100}) {
    const EntryArray e = gaussian_row(n, 10 + n);
    const ToeplitzSym t = circle_adjusted_toeplitz(e);
    const Eigen::MatrixXd dense = oracle::toeplitz(e.values, n, std::numbers::sqrt2 * e.values[0]);
    CounterRng rng(n);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    const auto y = toeplitz_matvec(t, v);
    const Eigen::VectorXd expected = dense * Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(expected(static_cast<Eigen::Index>(i))).epsilon(1e-10));
  }
}

TEST_CASE("projection entries match the Fourier conjugate of the half projection") {
  for (std::size_t N : {4, 8, 16, 30}) {
    const Eigen::MatrixXcd expected = oracle::projection(N);
    const Eigen::MatrixXcd p = materialize_projection(N);
    CHECK((p - expected).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("P is a Hermitian idempotent of rank n") {
  const Eigen::MatrixXcd p = materialize_projection(64);
  CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((p * p - p).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK(p.trace().real() == doctest::Approx(32.0).epsilon(1e-12));
}

TEST_CASE("the finite kernel approaches the limit kernel") {
  double previous = 1.0;
  for (std::size_t two_n : {64, 256, 1024, 4096}) {
    const double gap = kernel_convergence_gap(two_n, 16);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous <= 1e-3);
  CHECK(pi_entry(3, 0) == cplx(0.0, -1.0 / (3.0 * std::numbers::pi)));
  CHECK(pi_entry(4, 0) == cplx(0.0, 0.0));
  CHECK(p_entry(5, 5, 16) == cplx(0.5, 0.0));
}

TEST_CASE("apply_projection and apply_pdp match dense products") {
  for (std::size_t n : {2, 8, 64}) {
    const FourierDiagonal d = circle_adjusted_diagonal(gaussian_row(n, 77 + n));
    const auto v = probe(2 * n, n);
    const Eigen::Map<const Eigen::VectorXcd> vv(v.data(), static_cast<Eigen::Index>(2 * n));
    const Eigen::VectorXcd pv = oracle::projection(2 * n) * vv;
    const Eigen::VectorXcd pdpv = materialize_pdp(d) * vv;
    const auto a = apply_projection(v);
    const auto b = apply_pdp(d, v);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      CHECK(std::abs(a[i] - pv(static_cast<Eigen::Index>(i))) <= 1e-12);
      CHECK(std::abs(b[i] - pdpv(static_cast<Eigen::Index>(i))) <= 1e-12);
    }
  }
}

TEST_CASE("covariance formula agrees with the trigonometric sum and simulation") {
  for (std::size_t n : {3, 8, 17}) {
    for (std::size_t j = 0; j <= n; ++j) {
      for (std::size_t k = 0; k <= n; ++k) {
        CHECK(cov_d(j, k, n) == doctest::Approx(cov_d_bruteforce(j, k, n)).epsilon(1e-12));
      }
    }
  }
  // Var d_0 and E[d_0 d_1] at n = 8 from 40000 rademacher rows.
  EntrySpec r;
  r.family = Family::rademacher;
  std::vector<double> v00(40000), v01(40000);
  for (std::size_t t = 0; t < v00.size(); ++t) {
    const FourierDiagonal d = circle_adjusted_diagonal(sample_entries(r, 8, derive_seed(3, {t})));
    v00[t] = d.d[0] * d.d[0];
    v01[t] = d.d[0] * d.d[1];
  }
  const auto m00 = oracle::sample_moments(v00);
  const auto m01 = oracle::sample_moments(v01);
  CHECK(std::abs(m00.mean - cov_d(0, 0, 8)) <= 5 * m00.se);
  CHECK(std::abs(m01.mean - cov_d(0, 1, 8)) <= 5 * m01.se);
}

TEST_CASE("Dirichlet closed form") {
  for (std::size_t n = 1; n <= 20; ++n) {
    for (std::size_t m = 0; m <= 2 * n; ++m) {
      double direct = 0.0;
      for (std::size_t l = 1; l < n; ++l) direct += std::cos(std::numbers::pi * static_cast<double>(m * l) / static_cast<double>(n));
      CHECK(dirichlet_sum(m, n) == doctest::Approx(direct).epsilon(1e-12).scale(1.0));
    }
  }
  CHECK_THROWS_AS(dirichlet_sum(9, 4), std::out_of_range);
}

TEST_CASE("dense materializations are capped") {
  FourierDiagonal big;
  big.d.assign(2048, 1.0);
  CHECK_THROWS_AS(materialize_pdp(big), std::length_error);
  CHECK_NOTHROW(materialize_projection(1024));
}
