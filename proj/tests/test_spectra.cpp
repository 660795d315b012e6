// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "toeplab/ensemble.hpp"
#include "toeplab/seeding.hpp"
#include "toeplab/spectra.hpp"
#include "toeplab/toeplitz.hpp"

using namespace toeplab;

namespace {

Eigen::MatrixXcd random_hermitian(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  Eigen::MatrixXcd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = cplx(rng.normal(), rng.normal());
  return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("Lanczos finds the top eigenvalue of random Hermitian matrices") {
  for (std::size_t n : {1, 2, 10, 80, 300}) {
    const Eigen::MatrixXcd a = random_hermitian(n, n);
    LanczosOptions lo;
    lo.tol = 1e-11;
    lo.max_iter = 5000;
    lo.seed = 3;
    const EigReport r = top_eig_lanczos(dense_operator(a), lo);
    CHECK(r.lambda_max == doctest::Approx(oracle::top_eigenvalue(a)).epsilon(1e-9));
    CHECK(r.residual <= 1e-11 * std::max(1.0, std::abs(r.lambda_max)));
  }
}

TEST_CASE("Lanczos residual is a true residual of the returned vector") {
  const Eigen::MatrixXcd a = random_hermitian(60, 9);
  const EigReport r = top_eig_lanczos(dense_operator(a), 1e-10, 2000, 1);
  const Eigen::Map<const Eigen::VectorXcd> v(r.eigenvector.data(), 60);
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((a * v - r.lambda_max * v).norm() <= 2e-10 * std::max(1.0, std::abs(r.lambda_max)));
}

TEST_CASE("Lanczos handles degenerate and rank-one operators") {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(50, 50) * 2.0;
  CHECK(top_eig_lanczos(dense_operator(id), 1e-12, 100, 0).lambda_max == doctest::Approx(2.0).epsilon(1e-12));
  Eigen::VectorXcd u = Eigen::VectorXcd::Ones(40) / std::sqrt(40.0);
  const Eigen::MatrixXcd rank_one = u * u.adjoint() * 3.0;
  CHECK(top_eig_lanczos(dense_operator(rank_one), 1e-12, 100, 0).lambda_max == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("an exhausted budget raises ConvergenceError with the best estimate") {
  const Eigen::MatrixXcd a = random_hermitian(400, 5);
  LanczosOptions lo;
  lo.tol = 1e-14;
  lo.max_iter = 5;
  try {
    (void)top_eig_lanczos(dense_operator(a), lo);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.iterations() <= 5);
    CHECK(e.best_estimate() <= oracle::top_eigenvalue(a) + 1e-12);
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("matrix-free operators are Hermitian and match their dense forms") {
  EntrySpec g;
  const EntryArray e = sample_entries(g, 64, 8);
  const FourierDiagonal d = circle_adjusted_diagonal(e);
  CHECK(hermitian_defect(pdp_operator(d), 1) <= 1e-13);
  CHECK(hermitian_defect(toeplitz_operator(circle_adjusted_toeplitz(e)), 2) <= 1e-13);

  const double lanczos = top_eig_lanczos(pdp_operator(d), 1e-12, 4000, 4).lambda_max;
  CHECK(lanczos == doctest::Approx(oracle::top_eigenvalue(materialize_pdp(d))).epsilon(1e-10));
  const Eigen::MatrixXd t = materialize_toeplitz(circle_adjusted_toeplitz(e));
  CHECK(top_eig_lanczos(toeplitz_operator(circle_adjusted_toeplitz(e)), 1e-12, 4000, 4).lambda_max ==
        doctest::Approx(oracle::top_eigenvalue(t)).epsilon(1e-10));
}

TEST_CASE("dense eigensolver reconstructs its input and bounds hold") {
  const Eigen::MatrixXcd a = random_hermitian(100, 12);
  const DenseSpectrum s = dense_sym_eig(a, true);
  CHECK(s.reconstruction_error <= 1e-12);
  for (Eigen::Index i = 1; i < s.values.size(); ++i) CHECK(s.values[i - 1] <= s.values[i]);
  CHECK(specnorm_row_bound(a) >= s.values.cwiseAbs().maxCoeff());
  CHECK(top_eig_dense(a).lambda_max == doctest::Approx(s.values.maxCoeff()));
  CHECK_THROWS_AS(dense_sym_eig(Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(1025, 1025)), false), std::length_error);
}
