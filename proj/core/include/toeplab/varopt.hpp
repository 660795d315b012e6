// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "toeplab/fft.hpp"

namespace toeplab {

enum class Quadrature { midpoint, trapezoid };

/// Samples of a real function on a uniform grid.
///
/// midpoint:  cell i covers [origin + i step, origin + (i+1) step], node at its centre.
/// trapezoid: node i sits at origin + i step; end nodes get half weight.
struct GridProfile {
  double origin = 0.0;
  double step = 0.0;
  std::vector<double> values;
  Quadrature quadrature = Quadrature::midpoint;

  std::size_t size() const noexcept { return values.size(); }
  double node(std::size_t i) const noexcept;
  double weight(std::size_t i) const noexcept;
};

/// N midpoint cells on [-width/2, width/2], all values `fill`.
GridProfile window_profile(double width, std::size_t cells, double fill = 1.0);

double l2_norm(const GridProfile& f);
double lp_norm(const GridProfile& f, double p);
void normalize(GridProfile& f);

/// Self-convolution (f* conv f)(x) = int f(y) f(x + y) dy of a midpoint
/// profile, sampled at the lags m * step for |m| <= N as a trapezoid profile.
/// These are the exact node values of the piecewise-linear autocorrelation of
/// the step function (zero at both ends). FFT when N is a power of two, direct O(N^2) otherwise.
GridProfile autocorr(const GridProfile& f);
GridProfile autocorr_direct(const GridProfile& f);

/// ||f* conv f||_2 under the trapezoid rule of the autocorrelation grid.
double objective_K(const GridProfile& f);

struct AutocorrOptions {
  double tol = 1e-14;          // stop when the objective increases by less
  int max_iter = 500;
  bool monotone_rearrangement = false;  // also force f(x) >= f(y) for 0 <= x <= y
  bool coarse_grid = true;     // also solve at N/2 for a two-grid report
};

struct AutocorrResult {
  double value = 0.0;
  GridProfile profile;
  int iterations = 0;
  std::size_t N = 0;
  bool converged = false;
  std::vector<double> history;  // objective after each step, starting at the flat profile
  std::vector<std::pair<std::size_t, double>> grids;  // (N, value), finest last
};

/// Thrown when an ascent step lowers the objective beyond the 1e-13 slack.
class MonotonicityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximizes ||f* conv f||_2 over even, nonnegative, unit-L2 step functions
/// with N cells on [-width/2, width/2] by the fixed-point map
/// f <- normalize(symmetrize(max(0, (f* conv f) conv f))).
AutocorrResult maximize_autocorr(double width, std::size_t N, const AutocorrOptions& options = {});

/// width = 1. Requires N >= 64.
AutocorrResult maximize_K1(std::size_t N, double tol = 1e-14, int max_iter = 500);

/// K_delta at matched resolution: N_per_unit cells per unit length, so the
/// window of width delta gets round(delta * N_per_unit) cells.
AutocorrResult k_delta_result(double delta, std::size_t N_per_unit, double tol = 1e-14);
double k_delta(double delta, std::size_t N_per_unit, double tol = 1e-14);

/// Applies the finite section Pi_k (entries 1/2, 0, -i/(pi(k-l))) in
/// O(k log k) through a circulant embedding.
class PiSection {
 public:
  explicit PiSection(std::size_t k);
  std::size_t k() const noexcept { return k_; }
  void apply(std::span<const cplx> in, std::span<cplx> out) const;

 private:
  std::size_t k_;
  std::size_t len_;
  std::vector<cplx> kernel_hat_;
};

struct PiKOptions {
  double tol = 1e-11;      // stop when a full iteration raises the value by less
  int max_iter = 4000;     // outer iterations per start
  int random_starts = 4;
  std::uint64_t seed = 0x5eed;
  double eig_tol = 1e-12;
  bool keep_history = false;
};

struct PiKNormResult {
  std::size_t k = 0;
  double value = 0.0;            // ||Pi_k||_{2->4}^2 estimate
  std::vector<double> delta;     // unit, nonnegative
  std::vector<cplx> v;           // unit top eigenvector of Pi_k diag(delta) Pi_k
  int iterations = 0;            // outer iterations of the winning start
  bool converged = false;
  std::vector<double> start_values;  // final value of every start
  std::vector<double> history;       // half-step values of the winning start
};

/// sup over unit delta of lambda_1(Pi_k diag(delta) Pi_k) by alternating
/// maximization: v = top eigenvector for fixed delta, delta = |Pi v|^2 / norm.
/// Starts: uniform delta, `random_starts` seeded random delta, and
/// `warm_delta` when non-empty (zero-padded or truncated to length k about
/// the centre).
PiKNormResult pi_k_norm(std::size_t k, const PiKOptions& options = {},
                        std::span<const double> warm_delta = {});
PiKNormResult pi_k_norm(std::size_t k, double tol, int max_iter);

/// pi_k_norm for k = 1, 2, 4, ..., k_max, each warm-started from the
/// previous optimizer placed at the centre.
std::vector<PiKNormResult> pi_k_curve(std::size_t k_max, const PiKOptions& options = {});

/// (Sin f)(x) = int sin(pi (x - y)) / (pi (x - y)) f(y) dy on a trapezoid
/// grid, with the kernel's value 1 on the diagonal.
struct SinApplyResult {
  GridProfile image;
  double boundary_mass = 0.0;  // share of ||f||_2^2 in the outer tenth of the grid
  bool boundary_warning = false;  // boundary_mass > 1e-3
};

SinApplyResult sin_apply(const GridProfile& f);

/// Fourier transform t -> int f(x) exp(-2 pi i x t) dx of an even midpoint
/// step profile, exact for the step function, sampled on [-L, L] with spacing dt.
GridProfile fourier_of_even_profile(const GridProfile& f, double L, double dt);

struct SinCrossCheck {
  double value = 0.0;  // ||Sin f_hat||_4^2
  double L = 0.0;
  double dt = 0.0;
  double boundary_mass = 0.0;
  bool boundary_warning = false;
};

SinCrossCheck sin_crosscheck(const GridProfile& optimizer, double L = 512.0, double dt = 0.25);

struct RelationReport {
  double pi_estimate = 0.0;   // sqrt(2) ||Pi_{k_max}||^2
  double k1 = 0.0;
  double k1_squared = 0.0;
  double sin_estimate = 0.0;
  std::size_t k_max = 0;
  std::vector<std::pair<std::size_t, double>> pi_curve;  // (k, sqrt(2) value)
  std::vector<std::pair<std::size_t, double>> k1_grids;
  double gap_pi_k1 = 0.0;
  double gap_sin_k1 = 0.0;
  double gap_pi_sin = 0.0;
  bool curve_nondecreasing = false;
  bool pi_below_k1 = false;
  bool sin_within_tol = false;  // |sin - K1| <= sin_tol
  bool pi_within_allowance = false;
};

struct RelationOptions {
  std::size_t N = 4096;
  std::size_t k_max = 512;
  double sin_tol = 2e-3;
  double k_allowance = 0.05;
  double L = 512.0;
  double dt = 0.25;
  PiKOptions pi;
};

RelationReport verify_relation(const RelationOptions& options = {});

}  // namespace toeplab
