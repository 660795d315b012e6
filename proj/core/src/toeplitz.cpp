// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "toeplab/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "numeric_format.hpp"
#include "toeplab/ensemble.hpp"

namespace toeplab {
namespace {

std::size_t positive_mod(std::int64_t x, std::size_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  return static_cast<std::size_t>(((x % mm) + mm) % mm);
}

void check_dense_cap(std::size_t dim, const char* what) {
  if (dim > kDenseCap) {
    throw std::length_error(std::string(what) + ": dimension " + std::to_string(dim) +
                            " exceeds dense cap " + std::to_string(kDenseCap));
  }
}

// x -> (1/2n) U* Q U x, in place.
void project_in_place(std::vector<cplx>& work) {
  const std::size_t two_n = work.size();
  dft(work, FftSign::positive);
  std::fill(work.begin() + static_cast<std::ptrdiff_t>(two_n / 2), work.end(), cplx{0.0, 0.0});
  dft(work, FftSign::negative);
  const double scale = 1.0 / static_cast<double>(two_n);
  for (auto& x : work) x *= scale;
}

}  // namespace

std::string variant_name(DiagonalVariant v) {
  return v == DiagonalVariant::standard ? "standard" : "circle_adjusted";
}

double ToeplitzSym::diagonal() const noexcept {
  if (first_row.empty()) return 0.0;
  return variant == DiagonalVariant::circle_adjusted ? std::numbers::sqrt2 * first_row[0]
                                                     : first_row[0];
}

double ToeplitzSym::entry(std::size_t i, std::size_t j) const noexcept {
  const std::size_t lag = i > j ? i - j : j - i;
  return lag == 0 ? diagonal() : first_row[lag];
}

CirculantCoeffs embed_circulant(const ToeplitzSym& t, double b_n) {
  const std::size_t n = t.n();
  if (n == 0) throw std::invalid_argument("embed_circulant: empty Toeplitz matrix");
  CirculantCoeffs c;
  c.b.assign(2 * n, 0.0);
  c.b[0] = t.diagonal();
  for (std::size_t j = 1; j < n; ++j) {
    c.b[j] = t.first_row[j];
    c.b[2 * n - j] = t.first_row[j];
  }
  c.b[n] = b_n;
  return c;
}

FourierDiagonal fourier_diagonal(const CirculantCoeffs& c, DiagonalVariant variant) {
  const std::size_t two_n = c.two_n();
  std::vector<cplx> work(c.b.begin(), c.b.end());
  dft(work, FftSign::positive);

  double b_norm = 0.0;
  for (double x : c.b) b_norm += x * x;
  b_norm = std::sqrt(b_norm);

  FourierDiagonal out;
  out.variant = variant;
  out.d.resize(two_n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(two_n));
  double max_imag = 0.0;
  for (std::size_t j = 0; j < two_n; ++j) {
    max_imag = std::max(max_imag, std::abs(work[j].imag()) * scale);
    out.d[j] = work[j].real() * scale;
  }
  if (max_imag > 1e-10 * std::max(b_norm, 1.0)) {
    throw std::runtime_error("fourier_diagonal: imaginary part " + detail::shortest(max_imag) +
                             " is not negligible; circulant row is not palindromic");
  }
  return out;
}

ToeplitzSym circle_adjusted_toeplitz(const EntryArray& entries) {
  ToeplitzSym t;
  t.first_row.assign(entries.values.begin(),
                     entries.values.begin() + static_cast<std::ptrdiff_t>(entries.n));
  t.variant = DiagonalVariant::circle_adjusted;
  return t;
}

FourierDiagonal circle_adjusted_diagonal(const EntryArray& entries) {
  const ToeplitzSym t = circle_adjusted_toeplitz(entries);
  const double b_n = std::numbers::sqrt2 * entries.values.at(entries.n);
  return fourier_diagonal(embed_circulant(t, b_n), DiagonalVariant::circle_adjusted);
}

cplx p_entry(std::int64_t k, std::int64_t l, std::size_t two_n) {
  if (two_n == 0 || two_n % 2 != 0) {
    throw std::invalid_argument("p_entry: 2n must be a positive even integer");
  }
  const std::int64_t diff = k - l;
  if (diff == 0) return {0.5, 0.0};
  if (diff % 2 == 0) return {0.0, 0.0};
  const std::size_t n = two_n / 2;
  const double theta =
      2.0 * std::numbers::pi * static_cast<double>(positive_mod(diff, two_n)) /
      static_cast<double>(two_n);
  // 1 - exp(-i theta) = 2 sin^2(theta/2) + i sin(theta)
  const double half = std::sin(0.5 * theta);
  const cplx denom{2.0 * half * half, std::sin(theta)};
  return cplx{1.0 / static_cast<double>(n), 0.0} / denom;
}

cplx pi_entry(std::int64_t k, std::int64_t l) {
  const std::int64_t diff = k - l;
  if (diff == 0) return {0.5, 0.0};
  if (diff % 2 == 0) return {0.0, 0.0};
  return {0.0, -1.0 / (std::numbers::pi * static_cast<double>(diff))};
}

double kernel_convergence_gap(std::size_t two_n, std::size_t window) {
  double gap = 0.0;
  const auto w = static_cast<std::int64_t>(std::min(window, two_n - 1));
  // Both kernels depend only on k - l.
  for (std::int64_t diff = -w; diff <= w; ++diff) {
    gap = std::max(gap, std::abs(p_entry(diff, 0, two_n) - pi_entry(diff, 0)));
  }
  return gap;
}

double projection_row_l1(std::size_t two_n) {
  double sum = 0.0;
  for (std::size_t l = 0; l < two_n; ++l) sum += std::abs(p_entry(0, static_cast<std::int64_t>(l), two_n));
  return sum;
}

std::vector<cplx> apply_projection(std::span<const cplx> v) {
  if (v.empty() || v.size() % 2 != 0) {
    throw std::invalid_argument("apply_projection: length must be a positive even integer");
  }
  std::vector<cplx> work(v.begin(), v.end());
  project_in_place(work);
  return work;
}

std::vector<cplx> apply_pdp(const FourierDiagonal& d, std::span<const cplx> v) {
  if (v.size() != d.two_n()) {
    throw std::invalid_argument("apply_pdp: vector length " + std::to_string(v.size()) +
                                " does not match 2n = " + std::to_string(d.two_n()));
  }
  std::vector<cplx> work(v.begin(), v.end());
  project_in_place(work);
  for (std::size_t j = 0; j < work.size(); ++j) work[j] *= d.d[j];
  project_in_place(work);
  return work;
}

std::vector<double> toeplitz_matvec(const ToeplitzSym& t, std::span<const double> v) {
  const std::size_t n = t.n();
  if (v.size() != n) {
    throw std::invalid_argument("toeplitz_matvec: vector length " + std::to_string(v.size()) +
                                " does not match n = " + std::to_string(n));
  }
  const std::size_t len = next_power_of_two(std::max<std::size_t>(2 * n - 1, 1));
  std::vector<cplx> c(len, cplx{0.0, 0.0});
  c[0] = t.diagonal();
  for (std::size_t j = 1; j < n; ++j) {
    c[j] = t.first_row[j];
    c[len - j] = t.first_row[j];
  }
  std::vector<cplx> x(len, cplx{0.0, 0.0});
  std::copy(v.begin(), v.end(), x.begin());

  const FftPlan& plan = fft_plan(len);
  plan.forward(c);
  plan.forward(x);
  for (std::size_t i = 0; i < len; ++i) x[i] *= c[i];
  plan.inverse(x);

  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i].real() * scale;
  return out;
}

double cov_d(std::size_t j, std::size_t k, std::size_t n) {
  if (j > n || k > n) throw std::out_of_range("cov_d: indices must lie in [0, n]");
  if (j != k) return 0.0;
  return (j == 0 || j == n) ? 2.0 : 1.0;
}

double cov_d_bruteforce(std::size_t j, std::size_t k, std::size_t n) {
  if (j > n || k > n) throw std::out_of_range("cov_d_bruteforce: indices must lie in [0, n]");
  const double two_n = 2.0 * static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t l = 1; l < n; ++l) {
    // Reduce j*l modulo 2n so the cosine argument stays exact.
    const double aj = 2.0 * std::numbers::pi * static_cast<double>((j * l) % (2 * n)) / two_n;
    const double ak = 2.0 * std::numbers::pi * static_cast<double>((k * l) % (2 * n)) / two_n;
    sum += std::cos(aj) * std::cos(ak);
  }
  const double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
  return (2.0 + 2.0 * sign + 4.0 * sum) / two_n;
}

double dirichlet_sum(std::size_t m, std::size_t n) {
  if (m > 2 * n) throw std::out_of_range("dirichlet_sum: m must lie in [0, 2n]");
  if (m == 0 || m == 2 * n) return static_cast<double>(n) - 1.0;
  return (m % 2 == 0) ? -1.0 : 0.0;
}

Eigen::MatrixXd materialize_toeplitz(const ToeplitzSym& t) {
  const std::size_t n = t.n();
  check_dense_cap(n, "materialize_toeplitz");
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = t.entry(i, j);
  return m;
}

Eigen::MatrixXd materialize_circulant(const CirculantCoeffs& c) {
  const std::size_t two_n = c.two_n();
  check_dense_cap(two_n, "materialize_circulant");
  Eigen::MatrixXd m(two_n, two_n);
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = 0; j < two_n; ++j) m(i, j) = c.b[(j + two_n - i) % two_n];
  return m;
}

Eigen::MatrixXcd materialize_projection(std::size_t two_n) {
  check_dense_cap(two_n, "materialize_projection");
  Eigen::MatrixXcd p(two_n, two_n);
  for (std::size_t k = 0; k < two_n; ++k)
    for (std::size_t l = 0; l < two_n; ++l)
      p(k, l) = p_entry(static_cast<std::int64_t>(k), static_cast<std::int64_t>(l), two_n);
  return p;
}

Eigen::MatrixXcd materialize_pdp(const FourierDiagonal& d) {
  const Eigen::MatrixXcd p = materialize_projection(d.two_n());
  Eigen::VectorXcd diag(d.two_n());
  for (std::size_t j = 0; j < d.two_n(); ++j) diag[j] = d.d[j];
  return p * diag.asDiagonal() * p;
}

void write_matrix_csv(const Eigen::MatrixXcd& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << detail::sig17(m(i, j).real()) << ',' << detail::sig17(m(i, j).imag());
    }
    out << '\n';
  }
}

void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << detail::sig17(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace toeplab
