// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "toeplab/ensemble.hpp"

namespace toeplab {

/// f = (f_1, ..., f_m) : R^r -> R^m, thrice differentiable.
struct SmoothMap {
  std::size_t r = 0;
  std::size_t m = 0;
  std::function<std::vector<double>(std::span<const double>)> value;
  /// d^order f / dx_i^order (length m) for order 1..3. Left empty, central
  /// differences are used.
  std::function<std::vector<double>(std::span<const double>, std::size_t i, int order)> partial;
};

/// g : R^m -> R with optional analytic gradient, Hessian (row-major m x m)
/// and third-derivative tensor (m^3). Missing tensors fall back to central
/// differences along lines.
struct SmoothFunctional {
  std::size_t m = 0;
  std::function<double(std::span<const double>)> value;
  std::function<std::vector<double>(std::span<const double>)> gradient;
  std::function<std::vector<double>(std::span<const double>)> hessian;
  std::function<std::vector<double>(std::span<const double>)> third;
};

/// Central-difference steps: 1e-4 (1 + |x|) for first and second
/// derivatives, 2e-3 (1 + |x|) with a seven-point stencil for third.
std::vector<double> fd_partial(const SmoothMap& f, std::span<const double> x, std::size_t i, int order);

/// D^order g(z)[u, ..., u] (order 1..3), analytic when the tensor is present.
double directional(const SmoothFunctional& g, std::span<const double> z, std::span<const double> u, int order);
double directional_fd(const SmoothFunctional& g, std::span<const double> z, std::span<const double> u, int order);

/// d/dx_i^order f, analytic when available.
std::vector<double> partial(const SmoothMap& f, std::span<const double> x, std::size_t i, int order);

/// h_i(x) = sum g_lpq f'_l f'_p f'_q + 3 sum g_lp f''_l f'_p + sum g_l f'''_l,
/// primes meaning d/dx_i, i.e. the third derivative of g(f(x)) in x_i.
double h_i(const SmoothMap& f, const SmoothFunctional& g, std::size_t i, std::span<const double> x);

/// Number of grid points (endpoints included) for the interval supremum.
inline constexpr std::size_t kSupGrid = 33;

/// R_i and T_i for one realization: with base point
/// (X_1, ..., X_{i-1}, . , Y_{i+1}, ..., Y_r),
/// R_i = |X_i|^3 / 6 * sup over [min(0,X_i), max(0,X_i)] of |h_i|, and T_i the
/// same with Y_i.
std::pair<double, double> remainder_terms(const SmoothMap& f, const SmoothFunctional& g,
                                          std::span<const double> x, std::span<const double> y,
                                          std::size_t i, std::size_t grid = kSupGrid);

struct SwapReport {
  double lhs = 0.0;        // |mean g(f(X)) - mean g(f(Y))|
  double lhs_stderr = 0.0;
  double bound = 0.0;      // mean of sum_i (R_i + T_i)
  double bound_stderr = 0.0;
  std::size_t trials = 0;
  double mean_u = 0.0;
  double mean_v = 0.0;
  bool holds() const noexcept { return lhs <= bound + 3.0 * (lhs_stderr + bound_stderr); }
};

/// Monte-Carlo estimate of both sides of the swap inequality. Throws
/// std::invalid_argument unless the two laws share mean and variance.
/// Trials are independent (trial t uses streams derive_seed(seed, {t, 0|1}))
/// and are combined in index order, so `threads` never changes the result.
SwapReport swap_experiment(const EntrySpec& spec_x, const EntrySpec& spec_y, const SmoothMap& f,
                           const SmoothFunctional& g, std::size_t trials, std::uint64_t seed,
                           unsigned threads = 1);

/// E[phi(a)] for one entry by exact summation (discrete laws) or
/// Gauss-Kronrod quadrature (gaussian, uniform, student t).
double expectation(const EntrySpec& spec, const std::function<double(double)>& phi);

/// Both sides in closed form for r = 1: exact expectations of g(f(a)) and of
/// the remainder terms.
struct ExactSwap {
  double lhs = 0.0;
  double bound = 0.0;
};
ExactSwap swap_exact_r1(const EntrySpec& spec_x, const EntrySpec& spec_y, const SmoothMap& f,
                        const SmoothFunctional& g);

// Building blocks for experiments and tests.

/// f(x) = W x with W row-major m x r.
SmoothMap linear_map(std::size_t m, std::size_t r, std::vector<double> weights);
/// f(x) = x (r = m).
SmoothMap identity_map(std::size_t r);
/// r = m = 1, f(x) = x^2, analytic.
SmoothMap square_map();

/// g(z) = z' Q z + b' z + c.
SmoothFunctional quadratic_functional(std::size_t m, std::vector<double> Q, std::vector<double> b, double c);
/// m = 1: cos z, z^3, and exp(-(z - centre)^2 / (2 width^2)).
SmoothFunctional cos_functional();
SmoothFunctional cube_functional();
SmoothFunctional gaussian_bump(double centre, double width);

/// Drops analytic derivatives so every evaluation goes through differences.
SmoothMap without_derivatives(SmoothMap f);
SmoothFunctional without_derivatives(SmoothFunctional g);

/// A moderate-deviation configuration: the linear statistic d_k of the
/// circle-adjusted diagonal (k = floor(n/3), inputs a_0..a_n, unit variance)
/// composed with a bump at height u sqrt(2 ln n).
struct ModerateConfig {
  std::size_t n = 0;
  double u = 0.0;
  double height = 0.0;
  double width = 0.5;
};

std::vector<ModerateConfig> moderate_deviation_configs();
SmoothMap moderate_statistic(std::size_t n);

}  // namespace toeplab
