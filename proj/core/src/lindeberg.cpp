// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "toeplab/lindeberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "parallel.hpp"
#include "toeplab/seeding.hpp"

namespace toeplab {
namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

// Derivative of order 1..3 at 0 of phi, from samples phi(k s).
template <class Phi>
double line_derivative(Phi&& phi, double s1, double s3, int order) {
  switch (order) {
    case 1:
      return (phi(s1) - phi(-s1)) / (2.0 * s1);
    case 2:
      return (phi(s1) - 2.0 * phi(0.0) + phi(-s1)) / (s1 * s1);
    case 3: {
      const double s = s3;
      return (-phi(3 * s) + 8 * phi(2 * s) - 13 * phi(s) + 13 * phi(-s) - 8 * phi(-2 * s) + phi(-3 * s)) /
             (8.0 * s * s * s);
    }
    default:
      throw std::invalid_argument("derivative order must be 1, 2 or 3");
  }
}

double bilinear(const SmoothFunctional& g, std::span<const double> z, std::span<const double> u,
                std::span<const double> v) {
  const std::size_t m = g.m;
  if (g.hessian) {
    const auto hess = g.hessian(z);
    double s = 0.0;
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t p = 0; p < m; ++p) s += hess[l * m + p] * u[l] * v[p];
    return s;
  }
  std::vector<double> plus(m), minus(m);
  for (std::size_t l = 0; l < m; ++l) {
    plus[l] = u[l] + v[l];
    minus[l] = u[l] - v[l];
  }
  return 0.25 * (directional_fd(g, z, plus, 2) - directional_fd(g, z, minus, 2));
}

double law_pdf_student(double df, double x) {
  const double s = std::sqrt((df - 2.0) / df);
  const boost::math::students_t_distribution<double> dist(df);
  return boost::math::pdf(dist, x / s) / s;
}

}  // namespace

std::vector<double> fd_partial(const SmoothMap& f, std::span<const double> x, std::size_t i, int order) {
  if (i >= f.r || x.size() != f.r) throw std::invalid_argument("fd_partial: coordinate out of range");
  const double scale = 1.0 + std::abs(x[i]);
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> out(f.m);
  for (std::size_t l = 0; l < f.m; ++l) {
    const auto phi = [&](double t) {
      point[i] = x[i] + t;
      const double v = f.value(point)[l];
      point[i] = x[i];
      return v;
    };
    out[l] = line_derivative(phi, 1e-4 * scale, 2e-3 * scale, order);
  }
  return out;
}

std::vector<double> partial(const SmoothMap& f, std::span<const double> x, std::size_t i, int order) {
  return f.partial ? f.partial(x, i, order) : fd_partial(f, x, i, order);
}

double directional_fd(const SmoothFunctional& g, std::span<const double> z, std::span<const double> u,
                      int order) {
  const double un = max_abs(u);
  if (un == 0.0) return 0.0;
  const double scale = (1.0 + max_abs(z)) / un;
  std::vector<double> point(z.begin(), z.end());
  const auto phi = [&](double t) {
    for (std::size_t l = 0; l < g.m; ++l) point[l] = z[l] + t * u[l];
    return g.value(point);
  };
  return line_derivative(phi, 1e-4 * scale, 2e-3 * scale, order);
}

double directional(const SmoothFunctional& g, std::span<const double> z, std::span<const double> u, int order) {
  const std::size_t m = g.m;
  if (order == 1 && g.gradient) {
    const auto grad = g.gradient(z);
    double s = 0.0;
    for (std::size_t l = 0; l < m; ++l) s += grad[l] * u[l];
    return s;
  }
  if (order == 2 && g.hessian) return bilinear(g, z, u, u);
  if (order == 3 && g.third) {
    const auto t = g.third(z);
    double s = 0.0;
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) s += t[(l * m + p) * m + q] * u[l] * u[p] * u[q];
    return s;
  }
  return directional_fd(g, z, u, order);
}

double h_i(const SmoothMap& f, const SmoothFunctional& g, std::size_t i, std::span<const double> x) {
  if (f.m != g.m) throw std::invalid_argument("h_i: output dimension of f does not match g");
  const std::vector<double> z = f.value(x);
  const std::vector<double> a = partial(f, x, i, 1);
  const std::vector<double> b = partial(f, x, i, 2);
  const std::vector<double> c = partial(f, x, i, 3);
  double h = directional(g, z, a, 3);
  if (!all_zero(b)) h += 3.0 * bilinear(g, z, b, a);
  if (!all_zero(c)) h += directional(g, z, c, 1);
  return h;
}

std::pair<double, double> remainder_terms(const SmoothMap& f, const SmoothFunctional& g,
                                          std::span<const double> x, std::span<const double> y,
                                          std::size_t i, std::size_t grid) {
  if (x.size() != f.r || y.size() != f.r) throw std::invalid_argument("remainder_terms: sample dimension != r");
  if (i >= f.r) throw std::invalid_argument("remainder_terms: coordinate out of range");
  if (grid < 2) throw std::invalid_argument("remainder_terms: grid needs at least two points");
  std::vector<double> base(f.r);
  for (std::size_t j = 0; j < f.r; ++j) base[j] = j < i ? x[j] : y[j];

  const auto term = [&](double xi) {
    if (xi == 0.0) return 0.0;
    const double lo = std::min(0.0, xi);
    const double hi = std::max(0.0, xi);
    double sup = 0.0;
    for (std::size_t k = 0; k < grid; ++k) {
      base[i] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid - 1);
      sup = std::max(sup, std::abs(h_i(f, g, i, base)));
    }
    return std::abs(xi) * xi * xi / 6.0 * sup;
  };
  const double r_i = term(x[i]);
  const double t_i = term(y[i]);
  return {r_i, t_i};
}

SwapReport swap_experiment(const EntrySpec& spec_x, const EntrySpec& spec_y, const SmoothMap& f,
                           const SmoothFunctional& g, std::size_t trials, std::uint64_t seed,
                           unsigned threads) {
  if (trials < 2) throw std::invalid_argument("swap_experiment: need at least two trials");
  const PopulationMoments mx = population_moments(spec_x);
  const PopulationMoments my = population_moments(spec_y);
  if (std::abs(mx.mean - my.mean) > 1e-12 || std::abs(mx.variance - my.variance) > 1e-12) {
    throw std::invalid_argument("swap_experiment: laws differ in mean or variance (" + family_name(spec_x.family) +
                                " vs " + family_name(spec_y.family) + ")");
  }
  std::vector<double> gu(trials), gv(trials), bound(trials);
  detail::parallel_for(trials, threads, [&](std::size_t t) {
    CounterRng rx(derive_seed(seed, {t, 0}));
    CounterRng ry(derive_seed(seed, {t, 1}));
    std::vector<double> x(f.r), y(f.r);
    for (auto& v : x) v = sample_one(spec_x, rx);
    for (auto& v : y) v = sample_one(spec_y, ry);
    gu[t] = g.value(f.value(x));
    gv[t] = g.value(f.value(y));
    double b = 0.0;
    for (std::size_t i = 0; i < f.r; ++i) {
      const auto [r_i, t_i] = remainder_terms(f, g, x, y, i);
      b += r_i + t_i;
    }
    bound[t] = b;
  });
  const auto su = detail::mean_stderr(gu);
  const auto sv = detail::mean_stderr(gv);
  const auto sb = detail::mean_stderr(bound);
  SwapReport rep;
  rep.trials = trials;
  rep.mean_u = su.mean;
  rep.mean_v = sv.mean;
  rep.lhs = std::abs(su.mean - sv.mean);
  rep.lhs_stderr = std::sqrt(su.se * su.se + sv.se * sv.se);
  rep.bound = sb.mean;
  rep.bound_stderr = sb.se;
  return rep;
}

double expectation(const EntrySpec& spec, const std::function<double(double)>& phi) {
  using boost::math::quadrature::gauss_kronrod;
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (spec.family) {
    case Family::rademacher:
      return 0.5 * (phi(-1.0) + phi(1.0));
    case Family::table: {
      double s = 0.0;
      for (const auto& atom : spec.table) s += atom.probability * phi(atom.value);
      return s;
    }
    case Family::gaussian: {
      const auto integrand = [&](double x) {
        return phi(x) * std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
      };
      // Split at 0 so kinks of phi at the origin sit on an interval end.
      return gauss_kronrod<double, 61>::integrate(integrand, -inf, 0.0, 15, 1e-12) +
             gauss_kronrod<double, 61>::integrate(integrand, 0.0, inf, 15, 1e-12);
    }
    case Family::uniform: {
      const double a = std::sqrt(3.0);
      const auto integrand = [&](double x) { return phi(x) / (2.0 * a); };
      return gauss_kronrod<double, 61>::integrate(integrand, -a, 0.0, 15, 1e-12) +
             gauss_kronrod<double, 61>::integrate(integrand, 0.0, a, 15, 1e-12);
    }
    case Family::student_t: {
      const auto integrand = [&](double x) { return phi(x) * law_pdf_student(spec.df, x); };
      return gauss_kronrod<double, 61>::integrate(integrand, -inf, 0.0, 15, 1e-12) +
             gauss_kronrod<double, 61>::integrate(integrand, 0.0, inf, 15, 1e-12);
    }
  }
  throw std::invalid_argument("expectation: unknown family");
}

ExactSwap swap_exact_r1(const EntrySpec& spec_x, const EntrySpec& spec_y, const SmoothMap& f,
                        const SmoothFunctional& g) {
  if (f.r != 1) throw std::invalid_argument("swap_exact_r1: needs r = 1");
  const auto gf = [&](double a) {
    const double x[1] = {a};
    return g.value(f.value(x));
  };
  const auto remainder = [&](double a) {
    const double x[1] = {a};
    return remainder_terms(f, g, x, x, 0).first;
  };
  ExactSwap out;
  out.lhs = std::abs(expectation(spec_x, gf) - expectation(spec_y, gf));
  out.bound = expectation(spec_x, remainder) + expectation(spec_y, remainder);
  return out;
}

SmoothMap linear_map(std::size_t m, std::size_t r, std::vector<double> weights) {
  if (weights.size() != m * r) throw std::invalid_argument("linear_map: weights must be m x r");
  auto w = std::make_shared<const std::vector<double>>(std::move(weights));
  SmoothMap f;
  f.r = r;
  f.m = m;
  f.value = [w, m, r](std::span<const double> x) {
    std::vector<double> out(m, 0.0);
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t j = 0; j < r; ++j) out[l] += (*w)[l * r + j] * x[j];
    return out;
  };
  f.partial = [w, m, r](std::span<const double>, std::size_t i, int order) {
    std::vector<double> out(m, 0.0);
    if (order == 1)
      for (std::size_t l = 0; l < m; ++l) out[l] = (*w)[l * r + i];
    return out;
  };
  return f;
}

SmoothMap identity_map(std::size_t r) {
  std::vector<double> w(r * r, 0.0);
  for (std::size_t i = 0; i < r; ++i) w[i * r + i] = 1.0;
  return linear_map(r, r, std::move(w));
}

SmoothMap square_map() {
  SmoothMap f;
  f.r = 1;
  f.m = 1;
  f.value = [](std::span<const double> x) { return std::vector<double>{x[0] * x[0]}; };
  f.partial = [](std::span<const double> x, std::size_t, int order) {
    switch (order) {
      case 1: return std::vector<double>{2.0 * x[0]};
      case 2: return std::vector<double>{2.0};
      default: return std::vector<double>{0.0};
    }
  };
  return f;
}

SmoothFunctional quadratic_functional(std::size_t m, std::vector<double> Q, std::vector<double> b, double c) {
  if (Q.size() != m * m || b.size() != m) throw std::invalid_argument("quadratic_functional: shape mismatch");
  auto q = std::make_shared<const std::vector<double>>(std::move(Q));
  auto lin = std::make_shared<const std::vector<double>>(std::move(b));
  SmoothFunctional g;
  g.m = m;
  g.value = [q, lin, m, c](std::span<const double> z) {
    double s = c;
    for (std::size_t l = 0; l < m; ++l) {
      s += (*lin)[l] * z[l];
      for (std::size_t p = 0; p < m; ++p) s += (*q)[l * m + p] * z[l] * z[p];
    }
    return s;
  };
  g.gradient = [q, lin, m](std::span<const double> z) {
    std::vector<double> out(*lin);
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t p = 0; p < m; ++p) out[l] += ((*q)[l * m + p] + (*q)[p * m + l]) * z[p];
    return out;
  };
  g.hessian = [q, m](std::span<const double>) {
    std::vector<double> out(m * m);
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t p = 0; p < m; ++p) out[l * m + p] = (*q)[l * m + p] + (*q)[p * m + l];
    return out;
  };
  g.third = [m](std::span<const double>) { return std::vector<double>(m * m * m, 0.0); };
  return g;
}

namespace {

SmoothFunctional scalar_functional(std::function<double(double)> v, std::function<double(double)> d1,
                                   std::function<double(double)> d2, std::function<double(double)> d3) {
  SmoothFunctional g;
  g.m = 1;
  g.value = [v](std::span<const double> z) { return v(z[0]); };
  g.gradient = [d1](std::span<const double> z) { return std::vector<double>{d1(z[0])}; };
  g.hessian = [d2](std::span<const double> z) { return std::vector<double>{d2(z[0])}; };
  g.third = [d3](std::span<const double> z) { return std::vector<double>{d3(z[0])}; };
  return g;
}

}  // namespace

SmoothFunctional cos_functional() {
  return scalar_functional([](double z) { return std::cos(z); }, [](double z) { return -std::sin(z); },
                           [](double z) { return -std::cos(z); }, [](double z) { return std::sin(z); });
}

SmoothFunctional cube_functional() {
  return scalar_functional([](double z) { return z * z * z; }, [](double z) { return 3.0 * z * z; },
                           [](double z) { return 6.0 * z; }, [](double) { return 6.0; });
}

SmoothFunctional gaussian_bump(double centre, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_bump: width must be positive");
  const double w2 = width * width;
  const auto e = [=](double z) { return std::exp(-(z - centre) * (z - centre) / (2.0 * w2)); };
  return scalar_functional(
      e, [=](double z) { return -(z - centre) / w2 * e(z); },
      [=](double z) {
        const double u = (z - centre) / width;
        return (u * u - 1.0) / w2 * e(z);
      },
      [=](double z) {
        const double u = (z - centre) / width;
        return (3.0 * u - u * u * u) / (w2 * width) * e(z);
      });
}

SmoothMap without_derivatives(SmoothMap f) {
  f.partial = nullptr;
  return f;
}

SmoothFunctional without_derivatives(SmoothFunctional g) {
  g.gradient = nullptr;
  g.hessian = nullptr;
  g.third = nullptr;
  return g;
}

std::vector<ModerateConfig> moderate_deviation_configs() {
  std::vector<ModerateConfig> out;
  for (std::size_t n : {8u, 16u, 32u, 64u}) {
    for (double u : {0.5, 0.75, 1.0, 1.25, 1.5}) {
      ModerateConfig c;
      c.n = n;
      c.u = u;
      c.height = u * std::sqrt(2.0 * std::log(static_cast<double>(n)));
      c.width = 0.5;
      out.push_back(c);
    }
  }
  return out;
}

SmoothMap moderate_statistic(std::size_t n) {
  if (n < 3) throw std::invalid_argument("moderate_statistic: n must be at least 3");
  const std::size_t k = n / 3;
  const double norm = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  std::vector<double> w(n + 1);
  w[0] = std::numbers::sqrt2 * norm;
  for (std::size_t j = 1; j < n; ++j) {
    const double angle = std::numbers::pi * static_cast<double>((k * j) % (2 * n)) / static_cast<double>(n);
    w[j] = 2.0 * std::cos(angle) * norm;
  }
  w[n] = std::numbers::sqrt2 * (k % 2 == 0 ? 1.0 : -1.0) * norm;
  return linear_map(1, n + 1, std::move(w));
}

}  // namespace toeplab
