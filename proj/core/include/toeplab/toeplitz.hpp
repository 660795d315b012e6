// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "toeplab/fft.hpp"

namespace toeplab {

struct EntryArray;

/// `circle_adjusted` replaces the diagonal a_0 by sqrt(2) a_0 (and, for the
/// Fourier diagonal, uses b_n = sqrt(2) a_n).
enum class DiagonalVariant { standard, circle_adjusted };

std::string variant_name(DiagonalVariant v);

/// Symmetric Toeplitz matrix ((a_{|i-j|})) of size n = first_row.size().
struct ToeplitzSym {
  std::vector<double> first_row;
  DiagonalVariant variant = DiagonalVariant::standard;

  std::size_t n() const noexcept { return first_row.size(); }
  double diagonal() const noexcept;
  double entry(std::size_t i, std::size_t j) const noexcept;
};

/// First row b_0 ... b_{2n-1} of the 2n x 2n circulant containing T as its
/// top-left corner.
struct CirculantCoeffs {
  std::vector<double> b;
  std::size_t two_n() const noexcept { return b.size(); }
};

/// Eigenvalues d_0 ... d_{2n-1} of (2n)^{-1/2} C_{2n}.
struct FourierDiagonal {
  std::vector<double> d;
  DiagonalVariant variant = DiagonalVariant::standard;
  std::size_t two_n() const noexcept { return d.size(); }
};

/// b_j = a_j (j < n), b_n = b_n, b_j = a_{2n-j} (n < j < 2n). The circle
/// adjusted variant puts sqrt(2) a_0 in b_0.
CirculantCoeffs embed_circulant(const ToeplitzSym& t, double b_n);

/// d_j = (2n)^{-1/2} sum_k b_k exp(2 pi i j k / 2n). FFT for power-of-two 2n,
/// direct DFT otherwise. Throws std::runtime_error if the imaginary part
/// exceeds 1e-10 |b|, which would mean b is not palindromic.
FourierDiagonal fourier_diagonal(const CirculantCoeffs& c,
                                 DiagonalVariant variant = DiagonalVariant::standard);

/// T° built from a_0..a_{n-1} with b_n = sqrt(2) a_n, i.e. the pipeline used
/// for every Monte-Carlo trial.
ToeplitzSym circle_adjusted_toeplitz(const EntryArray& entries);
FourierDiagonal circle_adjusted_diagonal(const EntryArray& entries);

/// Entries of P_{2n} = U* Q U:
///   1/2 on the diagonal, 0 for even nonzero k-l, (1/n) / (1 - exp(-2 pi i (k-l)/2n)) for odd.
cplx p_entry(std::int64_t k, std::int64_t l, std::size_t two_n);

/// Entries of the limit kernel Pi: 1/2, 0, or -i / (pi (k-l)).
cplx pi_entry(std::int64_t k, std::int64_t l);

/// P_{2n} when two_n > 0, the limit Pi when two_n == 0.
class ProjectionKernel {
 public:
  explicit ProjectionKernel(std::size_t two_n = 0) : two_n_(two_n) {}
  bool is_limit() const noexcept { return two_n_ == 0; }
  std::size_t two_n() const noexcept { return two_n_; }
  cplx operator()(std::int64_t k, std::int64_t l) const {
    return is_limit() ? pi_entry(k, l) : p_entry(k, l, two_n_);
  }

 private:
  std::size_t two_n_;
};

/// max over |k-l| <= window of |P_{2n}(k,l) - Pi(k,l)|.
double kernel_convergence_gap(std::size_t two_n, std::size_t window);

/// max_k sum_l |P_{2n}(k,l)|, the row l1 norm (all rows agree by circulance).
double projection_row_l1(std::size_t two_n);

/// P v by transform / keep frequencies < n / inverse transform.
std::vector<cplx> apply_projection(std::span<const cplx> v);

/// P D P v, matrix-free in O(n log n) for power-of-two 2n.
std::vector<cplx> apply_pdp(const FourierDiagonal& d, std::span<const cplx> v);

/// T v in O(n log n) through a power-of-two circulant of size >= 2n - 1.
std::vector<double> toeplitz_matvec(const ToeplitzSym& t, std::span<const double> v);

/// Covariance E[d_j d_k] of the circle-adjusted diagonal for 0 <= j, k <= n.
double cov_d(std::size_t j, std::size_t k, std::size_t n);

/// The same covariance from the finite trigonometric sum
/// (1/2n) [2 + 2(-1)^{j+k} + 4 sum_{l=1}^{n-1} cos(pi j l / n) cos(pi k l / n)].
double cov_d_bruteforce(std::size_t j, std::size_t k, std::size_t n);

/// sum_{l=1}^{n-1} cos(2 pi m l / 2n) in closed form: n-1 for m in {0, 2n},
/// -(1 + (-1)^m)/2 otherwise.
double dirichlet_sum(std::size_t m, std::size_t n);

// Dense materializations, capped at 2n = 1024 (n = 1024 for T). Exceeding the
// cap throws std::length_error.
inline constexpr std::size_t kDenseCap = 1024;

Eigen::MatrixXd materialize_toeplitz(const ToeplitzSym& t);
Eigen::MatrixXd materialize_circulant(const CirculantCoeffs& c);
Eigen::MatrixXcd materialize_projection(std::size_t two_n);
Eigen::MatrixXcd materialize_pdp(const FourierDiagonal& d);

/// Writes a dense matrix as CSV. Complex matrices get two columns (re, im)
/// per entry.
void write_matrix_csv(const Eigen::MatrixXcd& m, const std::string& path);
void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path);

}  // namespace toeplab
