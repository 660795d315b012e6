// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "toeplab/lindeberg.hpp"

using namespace toeplab;

namespace {

EntrySpec law(Family f) {
  EntrySpec s;
  s.family = f;
  return s;
}

}  // namespace

TEST_CASE("h_i is the third derivative of the composition") {
  const SmoothMap f = square_map();
  for (const SmoothFunctional& g : {cos_functional(), gaussian_bump(0.7, 0.5), cube_functional()}) {
    for (double x : {-1.3, -0.2, 0.0, 0.4, 1.1}) {
      const double expected = oracle::derivative([&](double t) { return g.value(f.value(std::vector<double>{t})); }, x, 3);
      const std::vector<double> xv{x};
      CHECK(h_i(f, g, 0, xv) == doctest::Approx(expected).epsilon(1e-5).scale(1.0));
      // Difference-only evaluation agrees with the analytic one.
      CHECK(h_i(without_derivatives(f), without_derivatives(g), 0, xv) ==
            doctest::Approx(h_i(f, g, 0, xv)).epsilon(1e-4).scale(1.0));
    }
  }
}

TEST_CASE("h_i vanishes for a linear map into a quadratic") {
  const SmoothMap f = linear_map(2, 3, {1.0, 2.0, -1.0, 0.5, 0.0, 3.0});
  const SmoothFunctional q = quadratic_functional(2, {1.0, 0.5, 0.5, 2.0}, {0.1, -0.3}, 1.0);
  const std::vector<double> x{0.3, -0.7, 1.2};
  for (std::size_t i = 0; i < 3; ++i) CHECK(h_i(f, q, i, x) == 0.0);
}

TEST_CASE("finite differences match analytic partials") {
  const SmoothMap f = square_map();
  for (double x : {-2.0, 0.0, 0.5, 3.0}) {
    const std::vector<double> xv{x};
    CHECK(fd_partial(f, xv, 0, 1)[0] == doctest::Approx(2.0 * x).epsilon(1e-7).scale(1.0));
    CHECK(fd_partial(f, xv, 0, 2)[0] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(fd_partial(f, xv, 0, 3)[0]) <= 1e-4);
  }
  const SmoothFunctional g = gaussian_bump(0.0, 1.0);
  const std::vector<double> z{0.8}, u{1.0};
  for (int order = 1; order <= 3; ++order) {
    CHECK(directional_fd(g, z, u, order) == doctest::Approx(directional(g, z, u, order)).epsilon(1e-5).scale(1.0));
  }
}

TEST_CASE("remainder terms for a cubic are |x|^3") {
  const SmoothMap f = identity_map(1);
  const SmoothFunctional g = cube_functional();
  const std::vector<double> x{-1.5}, y{0.7};
  const auto [r, t] = remainder_terms(f, g, x, y, 0);
  CHECK(r == doctest::Approx(std::pow(1.5, 3)).epsilon(1e-10));
  CHECK(t == doctest::Approx(std::pow(0.7, 3)).epsilon(1e-10));
}

TEST_CASE("expectations of even moments") {
  const auto sq = [](double a) { return a * a; };
  const auto fourth = [](double a) { return a * a * a * a; };
  for (Family fam : {Family::gaussian, Family::rademacher, Family::uniform}) {
    CHECK(expectation(law(fam), sq) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(expectation(law(Family::gaussian), fourth) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(expectation(law(Family::rademacher), fourth) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(expectation(law(Family::uniform), fourth) == doctest::Approx(1.8).epsilon(1e-12));
  EntrySpec t = law(Family::student_t);
  t.df = 7.0;
  CHECK(expectation(t, sq) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("closed-form swap for cos with one coordinate") {
  const ExactSwap e = swap_exact_r1(law(Family::rademacher), law(Family::gaussian), identity_map(1), cos_functional());
  CHECK(e.lhs == doctest::Approx(std::abs(std::cos(1.0) - std::exp(-0.5))).epsilon(1e-12));
  // R: |1|^3/6 sup_[0,1] |sin| = sin(1)/6. T: E[|Y|^3 s(|Y|)]/6 with s(a) = sin(min(a, pi/2)).
  double t = 0.0;
  const double h = 1e-4;
  for (double y = h / 2; y < 12.0; y += h) {
    t += 2.0 * y * y * y * std::sin(std::min(y, std::numbers::pi / 2)) * std::exp(-y * y / 2) / std::sqrt(2 * std::numbers::pi) * h;
  }
  CHECK(e.bound == doctest::Approx(std::sin(1.0) / 6.0 + t / 6.0).epsilon(2e-3));
  CHECK(e.bound >= e.lhs);
}

TEST_CASE("swap experiment: trivial case, thread independence, moment check") {
  const SmoothMap f = linear_map(1, 4, {0.5, -0.5, 0.5, 0.5});
  const SmoothFunctional g = quadratic_functional(1, {1.0}, {0.3}, 0.0);
  const SwapReport one = swap_experiment(law(Family::rademacher), law(Family::gaussian), f, g, 4000, 9, 1);
  const SwapReport many = swap_experiment(law(Family::rademacher), law(Family::gaussian), f, g, 4000, 9, 3);
  CHECK(one.bound == 0.0);
  CHECK(one.lhs <= 3.0 * one.lhs_stderr);
  CHECK(one.lhs == many.lhs);
  CHECK(one.lhs_stderr == many.lhs_stderr);
  CHECK(one.mean_u == many.mean_u);

  EntrySpec wide = law(Family::table);
  wide.table = {{-2.0, 0.5}, {2.0, 0.5}};
  CHECK_THROWS_AS(swap_experiment(wide, law(Family::gaussian), identity_map(1), cos_functional(), 10, 1),
                  std::invalid_argument);
}

TEST_CASE("moderate-deviation statistic has unit variance") {
  for (const auto& c : moderate_deviation_configs()) {
    CHECK(c.height == doctest::Approx(c.u * std::sqrt(2.0 * std::log(static_cast<double>(c.n)))));
  }
  CHECK(moderate_deviation_configs().size() == 20);
  for (std::size_t n : {8, 16, 64}) {
    const SmoothMap f = moderate_statistic(n);
    CHECK(f.r == n + 1);
    double s = 0.0;
    std::vector<double> e(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      e[i] = 1.0;
      const double w = f.value(e)[0];
      s += w * w;
      e[i] = 0.0;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}
