// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "toeplab/blocks.hpp"
#include "toeplab/ensemble.hpp"
#include "toeplab/seeding.hpp"
#include "toeplab/spectra.hpp"
#include "toeplab/toeplitz.hpp"

using namespace toeplab;

namespace {

FourierDiagonal gaussian_diagonal(std::size_t n, std::uint64_t seed) {
  EntrySpec g;
  return circle_adjusted_diagonal(sample_entries(g, n, seed));
}

}  // namespace

TEST_CASE("threshold set follows its definition") {
  const FourierDiagonal d = gaussian_diagonal(256, 1);
  const ThresholdSet s = threshold_set(d, 0.4);
  const double level = 0.4 * std::sqrt(2.0 * std::log(256.0));
  CHECK(s.threshold == doctest::Approx(level));
  std::vector<std::size_t> expected;
  for (std::size_t j = 0; j < d.d.size(); ++j)
    if (std::abs(d.d[j]) >= level) expected.push_back(j);
  CHECK(s.indices == expected);
  const FourierDiagonal sparse = sparse_diag(d, s);
  for (std::size_t j = 0; j < d.d.size(); ++j) CHECK(sparse.d[j] == (s.contains(j) ? d.d[j] : 0.0));
  CHECK_THROWS_AS(threshold_set(d, 0.0), std::invalid_argument);
}

TEST_CASE("truncating the diagonal moves the top eigenvalue by at most the threshold") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TruncationGap gap = eps_truncation_gap(gaussian_diagonal(256, seed), 0.5);
    CHECK(gap.lhs <= gap.bound + gap.solver_slack);
    CHECK(gap.bound == doctest::Approx(0.5 * std::sqrt(2.0 * std::log(256.0))));
  }
}

TEST_CASE("brick scale and multiplicity") {
  CHECK(brick_scale(4096) == 729);  // ceil(ln 4096) = 9
  CHECK(brick_scale(512) == 343);   // ceil(ln 512) = 7
  CHECK(admissible_multiplicity(0.5) == 52);
  CHECK(admissible_multiplicity(0.3) == 138);
}

TEST_CASE("brick layouts cover the circle symmetrically at every scale") {
  for (std::size_t n : {512u, 1000u, 4096u, 1u << 14, 1u << 16}) {
    const BrickLayout l = build_bricks(n);
    const LayoutCheck c = check_layout(l);
    CAPTURE(n);
    CHECK(c.covers);
    CHECK(c.lengths);
    CHECK(c.symmetric);
    CHECK(static_cast<std::int64_t>(l.bricks.size()) == 2 * l.m + 1);
    CHECK(l.m == static_cast<std::int64_t>(n / l.r) - 1);
  }
  for (std::size_t r : {8, 13, 64}) {
    const BrickLayout l = build_bricks_with_scale(512, r);
    CHECK(check_layout(l).ok());
    for (std::size_t j = 0; j < 1024; j += 37) CHECK(l.brick(l.brick_of(j)).contains(j));
  }
  CHECK_THROWS_AS(build_bricks(64), std::invalid_argument);
}

TEST_CASE("partition cuts exactly between consecutive invisible bricks") {
  const BrickLayout layout = build_bricks_with_scale(256, 8);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FourierDiagonal d = gaussian_diagonal(256, seed);
    const PartitionLayout p = partition(layout, threshold_set(d, 0.5));
    // Parts tile the circle in order.
    std::size_t next = 0;
    for (const auto& part : p.lambda) {
      CHECK(part.first == next);
      next = part.last + 1;
    }
    CHECK(next == 512);
    // A part boundary sits after brick b exactly when b and b+1 are both invisible.
    std::set<std::size_t> cuts;
    for (std::size_t i = 0; i + 1 < p.lambda.size(); ++i) cuts.insert(p.lambda[i].last);
    for (std::size_t b = 0; b + 1 < layout.bricks.size(); ++b) {
      const bool cut = !p.visible[b] && !p.visible[b + 1];
      CHECK(cuts.count(layout.bricks[b].last) == (cut ? 1u : 0u));
    }
    const AdmissibilityReport rep = check_admissibility(p);
    CHECK(rep.parts_refine_bricks);
    CHECK(rep.gap_property);
  }
}

TEST_CASE("block maximum equals the direct maximum over dense blocks") {
  const BrickLayout layout = build_bricks_with_scale(128, 8);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const FourierDiagonal d = gaussian_diagonal(128, seed);
    const ThresholdSet s = threshold_set(d, 0.6);
    const PartitionLayout p = partition(layout, s);
    const Eigen::MatrixXcd full = oracle::projection(256);
    double expected = 0.0;
    for (const auto& part : p.lambda) {
      if (s.count_in(part.first, part.last) == 0) continue;
      const auto len = static_cast<Eigen::Index>(part.length());
      const auto off = static_cast<Eigen::Index>(part.first);
      const Eigen::MatrixXcd pj = full.block(off, off, len, len);
      Eigen::VectorXcd dj(len);
      for (Eigen::Index i = 0; i < len; ++i) {
        const auto j = static_cast<std::size_t>(off + i);
        dj(i) = s.contains(j) ? d.d[j] : 0.0;
      }
      const Eigen::MatrixXcd block = pj * dj.asDiagonal() * pj;
      expected = std::max(expected, oracle::top_eigenvalue(block));
    }
    CHECK(block_eig_max(d, p) == doctest::Approx(expected).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("projection blocks are principal submatrices of P") {
  const Eigen::MatrixXcd full = oracle::projection(64);
  const Eigen::MatrixXcd b = projection_block(64, {10, 29});
  CHECK((b - full.block(10, 10, 20, 20)).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("a single-brick layout reduces to the whole problem") {
  const FourierDiagonal d = gaussian_diagonal(512, 4);
  const ThresholdSet s = threshold_set(d, 0.3);
  const PartitionLayout p = partition(build_bricks(512), s);
  REQUIRE(p.lambda.size() == 1);
  const double full = oracle::top_eigenvalue(materialize_pdp(sparse_diag(d, s)));
  CHECK(block_eig_max(d, p) == doctest::Approx(full).epsilon(1e-9));
}
