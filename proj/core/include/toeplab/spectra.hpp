// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "toeplab/fft.hpp"

namespace toeplab {

struct FourierDiagonal;
struct ToeplitzSym;

/// A linear Hermitian operator given only by its action. `apply(in, out)`
/// writes A * in into out; both spans have length `dim`.
struct HermitianOp {
  std::size_t dim = 0;
  std::function<void(std::span<const cplx>, std::span<cplx>)> apply;
};

HermitianOp dense_operator(Eigen::MatrixXcd matrix);
HermitianOp pdp_operator(const FourierDiagonal& d);
HermitianOp toeplitz_operator(const ToeplitzSym& t);

/// Largest relative violation of <u, A v> = conj(<v, A u>) over `probes`
/// random pairs.
double hermitian_defect(const HermitianOp& op, std::uint64_t seed, int probes = 8);

enum class EigMethod { lanczos, dense };

struct EigReport {
  double lambda_max = 0.0;
  double residual = 0.0;  // |A v - lambda v|_2 for the returned unit vector
  int iterations = 0;     // operator applications
  EigMethod method = EigMethod::lanczos;
  std::vector<cplx> eigenvector;
  std::vector<double> ritz_history;  // top Ritz value at each convergence check
  int restarts = 0;
};

/// Thrown when an iterative solver exhausts its budget; carries the best
/// estimate reached.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double residual, int iterations)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        residual_(residual),
        iterations_(iterations) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double best_estimate_;
  double residual_;
  int iterations_;
};

struct LanczosOptions {
  double tol = 1e-10;         // residual <= tol * max(1, |lambda|)
  int max_iter = 2000;        // total operator applications, residual checks included; >= 2
  std::uint64_t seed = 0;     // start vector stream
  std::size_t max_basis = 256;  // Krylov vectors kept before an explicit restart
};

/// Largest eigenvalue of a Hermitian operator by Lanczos with full
/// (two-pass Gram-Schmidt) reorthogonalization and explicit restarts from the
/// current Ritz vector. When `start` is non-empty it replaces the random start
/// vector. Throws ConvergenceError when `max_iter` applications do not reach
/// the residual tolerance.
EigReport top_eig_lanczos(const HermitianOp& op, const LanczosOptions& options,
                          std::span<const cplx> start = {});

EigReport top_eig_lanczos(const HermitianOp& op, double tol, int max_iter, std::uint64_t seed);

struct DenseSpectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // columns, empty when only values were requested
  double reconstruction_error = 0.0;  // max |A - V diag V*| / max |A|
};

inline constexpr std::size_t kDenseEigCap = 1024;

/// Full spectrum of a dense Hermitian matrix (dimension <= 1024). With
/// vectors, the reconstruction error is checked against 1e-8 and a violation
/// throws std::runtime_error.
DenseSpectrum dense_sym_eig(const Eigen::MatrixXcd& matrix, bool with_vectors = true);
DenseSpectrum dense_sym_eig(const Eigen::MatrixXd& matrix, bool with_vectors = true);

/// Top eigenvalue and vector of a dense Hermitian matrix, reported like the
/// iterative solver for side-by-side comparison.
EigReport top_eig_dense(const Eigen::MatrixXcd& matrix);

/// sqrt(max row l1 sum * max column l1 sum), an upper bound on the spectral norm.
double specnorm_row_bound(const Eigen::MatrixXcd& matrix);

}  // namespace toeplab
