// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "toeplab/varopt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>

#include "numeric_format.hpp"
#include "toeplab/seeding.hpp"
#include "toeplab/spectra.hpp"
#include "toeplab/toeplitz.hpp"

namespace toeplab {
namespace {

constexpr double kAscentSlack = 1e-13;

double sinc(double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; }

// Circular autocorrelation spectrum |F|^2 and F of f zero-padded to len.
void spectrum(const std::vector<double>& f, std::size_t len, std::vector<cplx>& F) {
  F.assign(len, cplx{0.0, 0.0});
  std::copy(f.begin(), f.end(), F.begin());
  fft_plan(len).forward(F);
}

void symmetrize(std::vector<double>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double avg = 0.5 * (v[i] + v[n - 1 - i]);
    v[i] = avg;
    v[n - 1 - i] = avg;
  }
}

// Sorts the right half in decreasing order and mirrors it.
void rearrange_even(std::vector<double>& v) {
  const std::size_t n = v.size();
  const std::size_t c = n / 2;
  std::vector<double> right(v.begin() + static_cast<std::ptrdiff_t>(c), v.end());
  std::sort(right.begin(), right.end(), std::greater<>());
  for (std::size_t i = 0; i < right.size(); ++i) {
    v[c + i] = right[i];
    v[n - 1 - c - i] = right[i];
  }
}

std::vector<double> embed_centre(std::span<const double> src, std::size_t k) {
  std::vector<double> out(k, 0.0);
  if (src.size() <= k) {
    const std::size_t off = (k - src.size()) / 2;
    std::copy(src.begin(), src.end(), out.begin() + static_cast<std::ptrdiff_t>(off));
  } else {
    const std::size_t off = (src.size() - k) / 2;
    std::copy(src.begin() + static_cast<std::ptrdiff_t>(off),
              src.begin() + static_cast<std::ptrdiff_t>(off + k), out.begin());
  }
  return out;
}

double unit_normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (s > 0.0)
    for (double& x : v) x /= s;
  return s;
}

}  // namespace

double GridProfile::node(std::size_t i) const noexcept {
  const double di = static_cast<double>(i);
  return quadrature == Quadrature::midpoint ? origin + (di + 0.5) * step : origin + di * step;
}

double GridProfile::weight(std::size_t i) const noexcept {
  if (quadrature == Quadrature::midpoint) return step;
  return (i == 0 || i + 1 == values.size()) ? 0.5 * step : step;
}

GridProfile window_profile(double width, std::size_t cells, double fill) {
  if (!(width > 0.0) || cells == 0) throw std::invalid_argument("window_profile: empty window");
  GridProfile f;
  f.origin = -0.5 * width;
  f.step = width / static_cast<double>(cells);
  f.values.assign(cells, fill);
  f.quadrature = Quadrature::midpoint;
  return f;
}

double lp_norm(const GridProfile& f, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.weight(i) * std::pow(std::abs(f.values[i]), p);
  return std::pow(s, 1.0 / p);
}

double l2_norm(const GridProfile& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.weight(i) * f.values[i] * f.values[i];
  return std::sqrt(s);
}

void normalize(GridProfile& f) {
  const double norm = l2_norm(f);
  if (norm == 0.0) throw std::domain_error("normalize: zero profile");
  for (double& x : f.values) x /= norm;
}

GridProfile autocorr_direct(const GridProfile& f) {
  const std::size_t n = f.size();
  GridProfile g;
  g.origin = -static_cast<double>(n) * f.step;
  g.step = f.step;
  g.quadrature = Quadrature::trapezoid;
  g.values.assign(2 * n + 1, 0.0);
  for (std::size_t t = 1; t < 2 * n; ++t) {
    const auto m = static_cast<std::int64_t>(t) - static_cast<std::int64_t>(n);
    double s = 0.0;
    for (std::int64_t i = std::max<std::int64_t>(0, -m); i < static_cast<std::int64_t>(n) &&
                                                          i + m < static_cast<std::int64_t>(n);
         ++i) {
      s += f.values[static_cast<std::size_t>(i)] * f.values[static_cast<std::size_t>(i + m)];
    }
    g.values[t] = f.step * s;
  }
  return g;
}

GridProfile autocorr(const GridProfile& f) {
  const std::size_t n = f.size();
  if (!is_power_of_two(n)) return autocorr_direct(f);
  const std::size_t len = 2 * n;
  std::vector<cplx> F;
  spectrum(f.values, len, F);
  for (auto& z : F) z = std::norm(z);
  fft_plan(len).inverse(F);
  GridProfile g;
  g.origin = -static_cast<double>(n) * f.step;
  g.step = f.step;
  g.quadrature = Quadrature::trapezoid;
  g.values.assign(2 * n + 1, 0.0);
  const double scale = f.step / static_cast<double>(len);
  for (std::size_t t = 1; t < 2 * n; ++t) {
    const auto m = static_cast<std::int64_t>(t) - static_cast<std::int64_t>(n);
    const auto idx = static_cast<std::size_t>(m < 0 ? m + static_cast<std::int64_t>(len) : m);
    g.values[t] = F[idx].real() * scale;
  }
  return g;
}

double objective_K(const GridProfile& f) { return l2_norm(autocorr(f)); }

AutocorrResult maximize_autocorr(double width, std::size_t N, const AutocorrOptions& options) {
  if (N < 2) throw std::invalid_argument("maximize_autocorr: need at least two cells");
  AutocorrResult res;
  res.N = N;
  res.profile = window_profile(width, N);
  normalize(res.profile);
  double prev = objective_K(res.profile);
  res.history.push_back(prev);

  const std::size_t len = next_power_of_two(2 * N);
  const FftPlan& plan = fft_plan(len);
  std::vector<cplx> F;
  for (int it = 0; it < options.max_iter; ++it) {
    // Gradient direction of ||f* conv f||^2: (f* conv f) conv f, spectrum |F|^2 F.
    spectrum(res.profile.values, len, F);
    for (auto& z : F) z *= std::norm(z);
    plan.inverse(F);
    std::vector<double> next(N);
    for (std::size_t i = 0; i < N; ++i) next[i] = std::max(0.0, F[i].real());
    symmetrize(next);
    if (options.monotone_rearrangement) rearrange_even(next);
    GridProfile cand = res.profile;
    cand.values = std::move(next);
    normalize(cand);
    const double value = objective_K(cand);
    ++res.iterations;
    if (value < prev - kAscentSlack) {
      throw MonotonicityError("maximize_autocorr: objective fell from " + detail::shortest(prev) + " to " +
                              detail::shortest(value) + " at iteration " + std::to_string(it + 1));
    }
    res.profile = std::move(cand);
    res.history.push_back(value);
    const double gain = value - prev;
    prev = value;
    if (gain < options.tol) {
      res.converged = true;
      break;
    }
  }
  res.value = prev;

  if (options.coarse_grid && N >= 4) {
    AutocorrOptions coarse = options;
    coarse.coarse_grid = false;
    const AutocorrResult half = maximize_autocorr(width, N / 2, coarse);
    res.grids.emplace_back(N / 2, half.value);
  }
  res.grids.emplace_back(N, res.value);
  return res;
}

AutocorrResult maximize_K1(std::size_t N, double tol, int max_iter) {
  if (N < 64) throw std::invalid_argument("maximize_K1: N must be at least 64");
  AutocorrOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  return maximize_autocorr(1.0, N, options);
}

AutocorrResult k_delta_result(double delta, std::size_t N_per_unit, double tol) {
  if (!(delta > 0.0)) throw std::invalid_argument("k_delta: delta must be positive");
  const auto cells = static_cast<std::size_t>(std::llround(delta * static_cast<double>(N_per_unit)));
  if (cells < 2) throw std::invalid_argument("k_delta: resolution leaves fewer than two cells");
  AutocorrOptions options;
  options.tol = tol;
  return maximize_autocorr(delta, cells, options);
}

double k_delta(double delta, std::size_t N_per_unit, double tol) {
  return k_delta_result(delta, N_per_unit, tol).value;
}

PiSection::PiSection(std::size_t k) : k_(k), len_(next_power_of_two(2 * std::max<std::size_t>(k, 1))) {
  if (k == 0) throw std::invalid_argument("PiSection: k must be positive");
  kernel_hat_.assign(len_, cplx{0.0, 0.0});
  const auto kk = static_cast<std::int64_t>(k);
  for (std::int64_t d = -(kk - 1); d <= kk - 1; ++d) {
    const auto idx = static_cast<std::size_t>(d < 0 ? d + static_cast<std::int64_t>(len_) : d);
    kernel_hat_[idx] = pi_entry(d, 0);
  }
  fft_plan(len_).forward(kernel_hat_);
}

void PiSection::apply(std::span<const cplx> in, std::span<cplx> out) const {
  std::vector<cplx> work(len_, cplx{0.0, 0.0});
  std::copy(in.begin(), in.end(), work.begin());
  const FftPlan& plan = fft_plan(len_);
  plan.forward(work);
  for (std::size_t i = 0; i < len_; ++i) work[i] *= kernel_hat_[i];
  plan.inverse(work);
  const double scale = 1.0 / static_cast<double>(len_);
  for (std::size_t i = 0; i < k_; ++i) out[i] = work[i] * scale;
}

PiKNormResult pi_k_norm(std::size_t k, const PiKOptions& options, std::span<const double> warm_delta) {
  if (k == 0) throw std::invalid_argument("pi_k_norm: k must be positive");
  const auto pi = std::make_shared<const PiSection>(k);

  std::vector<std::vector<double>> starts;
  starts.emplace_back(k, 1.0 / std::sqrt(static_cast<double>(k)));
  for (int s = 0; s < options.random_starts; ++s) {
    CounterRng rng(derive_seed(options.seed, {static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(s)}));
    std::vector<double> d(k);
    for (double& x : d) x = rng.normal();
    unit_normalize(d);
    starts.push_back(std::move(d));
  }
  if (!warm_delta.empty()) {
    auto d = embed_centre(warm_delta, k);
    if (unit_normalize(d) > 0.0) starts.push_back(std::move(d));
  }

  PiKNormResult best;
  best.k = k;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<cplx> pv(k);

  for (std::size_t s = 0; s < starts.size(); ++s) {
    auto delta = std::make_shared<std::vector<double>>(starts[s]);
    HermitianOp op;
    op.dim = k;
    op.apply = [pi, delta](std::span<const cplx> in, std::span<cplx> out) {
      std::vector<cplx> tmp(in.size());
      pi->apply(in, tmp);
      for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] *= (*delta)[i];
      pi->apply(tmp, out);
    };

    LanczosOptions lo;
    lo.tol = options.eig_tol;
    lo.max_iter = 20 * static_cast<int>(k) + 400;
    lo.seed = derive_seed(options.seed, {static_cast<std::uint64_t>(k), 1000 + s});

    std::vector<cplx> v;
    std::vector<double> history;
    double value = -std::numeric_limits<double>::infinity();
    double last_half = -std::numeric_limits<double>::infinity();
    bool converged = false;
    int it = 0;
    const auto check = [&](double next, const char* step) {
      if (next < last_half - 1e-12 * std::max(1.0, std::abs(last_half))) {
        throw MonotonicityError(std::string("pi_k_norm: ") + step + " lowered the objective from " +
                                detail::shortest(last_half) + " to " + detail::shortest(next) + " (k = " +
                                std::to_string(k) + ")");
      }
      last_half = next;
      if (options.keep_history) history.push_back(next);
    };
    while (it < options.max_iter) {
      ++it;
      const EigReport eig = top_eig_lanczos(op, lo, v);
      v = eig.eigenvector;
      check(eig.lambda_max, "eigenvector step");
      pi->apply(v, pv);
      std::vector<double> q(k);
      for (std::size_t i = 0; i < k; ++i) q[i] = std::norm(pv[i]);
      const double next = unit_normalize(q);
      *delta = std::move(q);
      check(next, "delta step");
      const double gain = next - value;
      value = next;
      if (gain < options.tol) {
        converged = true;
        break;
      }
    }
    best.start_values.push_back(value);
    if (value > best.value) {
      best.value = value;
      best.delta = *delta;
      best.v = v;
      best.iterations = it;
      best.converged = converged;
      best.history = std::move(history);
    }
  }
  return best;
}

PiKNormResult pi_k_norm(std::size_t k, double tol, int max_iter) {
  PiKOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  return pi_k_norm(k, options);
}

std::vector<PiKNormResult> pi_k_curve(std::size_t k_max, const PiKOptions& options) {
  std::vector<PiKNormResult> out;
  std::vector<double> warm;
  for (std::size_t k = 1; k <= k_max; k *= 2) {
    out.push_back(pi_k_norm(k, options, warm));
    warm = out.back().delta;
  }
  return out;
}

SinApplyResult sin_apply(const GridProfile& f) {
  const std::size_t n = f.size();
  SinApplyResult res;
  res.image = f;
  if (n == 0) return res;
  std::vector<double> kernel(n);
  for (std::size_t d = 0; d < n; ++d) kernel[d] = sinc(std::numbers::pi * static_cast<double>(d) * f.step);
  std::vector<double> wf(n);
  for (std::size_t j = 0; j < n; ++j) wf[j] = f.weight(j) * f.values[j];
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += kernel[i > j ? i - j : j - i] * wf[j];
    res.image.values[i] = s;
  }

  const double lo = f.node(0);
  const double hi = f.node(n - 1);
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double total = 0.0, outer = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mass = f.weight(i) * f.values[i] * f.values[i];
    total += mass;
    if (std::abs(f.node(i) - centre) > 0.9 * half) outer += mass;
  }
  res.boundary_mass = total > 0.0 ? outer / total : 0.0;
  res.boundary_warning = res.boundary_mass > 1e-3;
  return res;
}

GridProfile fourier_of_even_profile(const GridProfile& f, double L, double dt) {
  if (f.quadrature != Quadrature::midpoint) {
    throw std::invalid_argument("fourier_of_even_profile: expects a midpoint profile");
  }
  if (!(L > 0.0) || !(dt > 0.0)) throw std::invalid_argument("fourier_of_even_profile: L and dt must be positive");
  const auto count = static_cast<std::size_t>(std::llround(2.0 * L / dt)) + 1;
  GridProfile g;
  g.origin = -L;
  g.step = dt;
  g.quadrature = Quadrature::trapezoid;
  g.values.assign(count, 0.0);
  const double h = f.step;
  for (std::size_t j = 0; j < count; ++j) {
    const double t = g.node(j);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f.values[i] * std::cos(2.0 * std::numbers::pi * f.node(i) * t);
    g.values[j] = s * h * sinc(std::numbers::pi * h * t);
  }
  return g;
}

SinCrossCheck sin_crosscheck(const GridProfile& optimizer, double L, double dt) {
  const GridProfile fhat = fourier_of_even_profile(optimizer, L, dt);
  const SinApplyResult image = sin_apply(fhat);
  SinCrossCheck out;
  const double l4 = lp_norm(image.image, 4.0);
  out.value = l4 * l4;
  out.L = L;
  out.dt = dt;
  out.boundary_mass = image.boundary_mass;
  out.boundary_warning = image.boundary_warning;
  return out;
}

RelationReport verify_relation(const RelationOptions& options) {
  RelationReport rep;
  const AutocorrResult k1 = maximize_K1(options.N);
  rep.k1 = k1.value;
  rep.k1_squared = k1.value * k1.value;
  rep.k1_grids = k1.grids;

  const auto curve = pi_k_curve(options.k_max, options.pi);
  rep.curve_nondecreasing = true;
  rep.pi_below_k1 = true;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double scaled = std::numbers::sqrt2 * curve[i].value;
    rep.pi_curve.emplace_back(curve[i].k, scaled);
    if (i > 0 && curve[i].value < curve[i - 1].value) rep.curve_nondecreasing = false;
    if (!(scaled < rep.k1)) rep.pi_below_k1 = false;
  }
  rep.k_max = curve.back().k;
  rep.pi_estimate = rep.pi_curve.back().second;

  rep.sin_estimate = sin_crosscheck(k1.profile, options.L, options.dt).value;
  rep.gap_pi_k1 = rep.k1 - rep.pi_estimate;
  rep.gap_sin_k1 = std::abs(rep.sin_estimate - rep.k1);
  rep.gap_pi_sin = std::abs(rep.sin_estimate - rep.pi_estimate);
  rep.sin_within_tol = rep.gap_sin_k1 <= options.sin_tol;
  rep.pi_within_allowance = rep.gap_pi_k1 >= 0.0 && rep.gap_pi_k1 <= options.k_allowance;
  return rep;
}

}  // namespace toeplab
