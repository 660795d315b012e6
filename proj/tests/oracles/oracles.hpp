// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

// Reference computations for the unit tests. Each one follows the defining
// formula directly, shares no code with the library, and favours clarity over
// speed.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

/// sum_k x_k exp(sign 2 pi i j k / N) in long double with reduced phases.
inline std::vector<cplx> dft(const std::vector<cplx>& x, int sign) {
  const std::size_t N = x.size();
  std::vector<cplx> out(N);
  for (std::size_t j = 0; j < N; ++j) {
    long double re = 0.0L, im = 0.0L;
    for (std::size_t k = 0; k < N; ++k) {
      const long double phase = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>((j * k) % N) /
                                static_cast<long double>(N) * sign;
      re += x[k].real() * std::cos(phase) - x[k].imag() * std::sin(phase);
      im += x[k].real() * std::sin(phase) + x[k].imag() * std::cos(phase);
    }
    out[j] = cplx(static_cast<double>(re), static_cast<double>(im));
  }
  return out;
}

/// ((a_{|i-j|})) with a_0 replaced by diag0.
inline Eigen::MatrixXd toeplitz(const std::vector<double>& a, std::size_t n, double diag0) {
  Eigen::MatrixXd t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j) = (i == j) ? diag0 : a[i > j ? i - j : j - i];
  return t;
}

/// d_j = (2n)^{-1/2} [sqrt2 a_0 + sqrt2 (-1)^j a_n + 2 sum_{k=1}^{n-1} a_k cos(pi j k / n)].
inline std::vector<double> circle_diagonal(const std::vector<double>& a, std::size_t n) {
  std::vector<double> d(2 * n);
  for (std::size_t j = 0; j < 2 * n; ++j) {
    long double s = std::numbers::sqrt2_v<long double> * a[0] +
                    std::numbers::sqrt2_v<long double> * ((j % 2) ? -1.0L : 1.0L) * a[n];
    for (std::size_t k = 1; k < n; ++k) {
      s += 2.0L * a[k] *
           std::cos(std::numbers::pi_v<long double> * static_cast<long double>((j * k) % (2 * n)) /
                    static_cast<long double>(n));
    }
    d[j] = static_cast<double>(s / std::sqrt(2.0L * n));
  }
  return d;
}

/// P(k, l) = (1/N) sum_{m < N/2} exp(-2 pi i m (k - l) / N), the Fourier
/// conjugate of the projection onto the first half of the coordinates.
inline Eigen::MatrixXcd projection(std::size_t N) {
  Eigen::MatrixXcd p(N, N);
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t l = 0; l < N; ++l) {
      cplx s = 0.0;
      for (std::size_t m = 0; m < N / 2; ++m) {
        const std::int64_t diff = static_cast<std::int64_t>(k) - static_cast<std::int64_t>(l);
        const std::int64_t r = ((static_cast<std::int64_t>(m) * diff) % static_cast<std::int64_t>(N) +
                                static_cast<std::int64_t>(N)) % static_cast<std::int64_t>(N);
        s += std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(N));
      }
      p(k, l) = s / static_cast<double>(N);
    }
  }
  return p;
}

/// Finite section of the limit kernel: 1/2, 0, -i / (pi (k - l)).
inline Eigen::MatrixXcd pi_section(std::size_t k) {
  Eigen::MatrixXcd p(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const auto diff = static_cast<double>(static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b));
      if (a == b) {
        p(a, b) = 0.5;
      } else if ((a + b) % 2 == 0) {
        p(a, b) = 0.0;
      } else {
        p(a, b) = cplx(0.0, -1.0 / (std::numbers::pi * diff));
      }
    }
  }
  return p;
}

inline double top_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

inline double top_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

/// Central differences of a scalar function of one variable, fourth order in
/// the step for the third derivative.
inline double derivative(const std::function<double(double)>& f, double x, int order) {
  switch (order) {
    case 1: {
      const double h = 1e-5;
      return (f(x + h) - f(x - h)) / (2 * h);
    }
    case 2: {
      const double h = 1e-4;
      return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    }
    default: {
      const double h = 5e-3;
      return (-f(x + 3 * h) + 8 * f(x + 2 * h) - 13 * f(x + h) + 13 * f(x - h) - 8 * f(x - 2 * h) + f(x - 3 * h)) /
             (8 * h * h * h);
    }
  }
}

/// Exact lag sums of a step profile: sum_i f_i f_{i+m} h for |m| < N.
inline std::vector<double> step_autocorr(const std::vector<double>& f, double h) {
  const std::size_t N = f.size();
  std::vector<double> out(2 * N + 1, 0.0);
  for (std::size_t m = 0; m < N; ++m) {
    long double s = 0.0L;
    for (std::size_t i = 0; i + m < N; ++i) s += static_cast<long double>(f[i]) * f[i + m];
    out[N + m] = out[N - m] = static_cast<double>(s * h);
  }
  return out;
}

/// Mean and standard error of a sample.
struct Moments {
  double mean = 0.0;
  double se = 0.0;
};

inline Moments sample_moments(const std::vector<double>& x) {
  long double s = 0.0L, s2 = 0.0L;
  for (double v : x) s += v;
  const long double mean = s / x.size();
  for (double v : x) s2 += (v - mean) * (v - mean);
  const long double var = s2 / (x.size() - 1);
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(var / x.size()))};
}

}  // namespace oracle
