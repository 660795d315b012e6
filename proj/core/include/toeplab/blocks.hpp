// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "toeplab/spectra.hpp"
#include "toeplab/toeplitz.hpp"

namespace toeplab {

/// S = { j : |d_j| >= epsilon sqrt(2 ln n) }, sorted.
struct ThresholdSet {
  double epsilon = 0.0;
  std::size_t n = 0;
  double threshold = 0.0;
  std::vector<std::size_t> indices;

  bool contains(std::size_t j) const;
  std::size_t count_in(std::size_t first, std::size_t last) const;  // inclusive range
};

/// Throws std::invalid_argument unless epsilon > 0 and n >= 3.
ThresholdSet threshold_set(const FourierDiagonal& d, double epsilon);

/// D^eps: d_j kept on S, zero elsewhere.
FourierDiagonal sparse_diag(const FourierDiagonal& d, const ThresholdSet& s);

struct TruncationGap {
  double lhs = 0.0;    // |lambda_1(PDP) - lambda_1(P D^eps P)|
  double bound = 0.0;  // epsilon sqrt(2 ln n)
  double lambda_full = 0.0;
  double lambda_sparse = 0.0;
  double solver_slack = 0.0;  // tol * max(1, |lambda|) summed over both solves
};

TruncationGap eps_truncation_gap(const FourierDiagonal& d, double epsilon,
                                 const LanczosOptions& options = {});

/// Closed integer interval [first, last].
struct Interval {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t length() const noexcept { return last - first + 1; }
  bool contains(std::size_t j) const noexcept { return first <= j && j <= last; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// ceil(ln n)^3.
std::size_t brick_scale(std::size_t n);

/// M(eps) = 4 + ceil(12 / eps^2).
std::size_t admissible_multiplicity(double epsilon);

/// Bricks L_{-m} ... L_m covering {0, ..., 2n-1} left to right; bricks[k + m]
/// is L_k. L_0 is the centred interval of length 2r + 2 (n mod r), every other
/// brick has length r.
struct BrickLayout {
  std::size_t n = 0;
  std::size_t r = 0;
  std::int64_t m = 0;
  std::size_t gap = 0;  // the gap window floor((ln n)^3), clamped to r - 1
  std::vector<Interval> bricks;

  const Interval& brick(std::int64_t k) const { return bricks.at(static_cast<std::size_t>(k + m)); }
  std::int64_t brick_of(std::size_t j) const;  // label k of the brick containing j
};

/// Layout at the natural scale r = ceil(ln n)^3. m = 0 (a single brick) is
/// allowed; n < r throws std::invalid_argument naming the smallest usable n.
BrickLayout build_bricks(std::size_t n);

/// Same construction at an explicit scale, for layouts with many bricks at
/// small n.
BrickLayout build_bricks_with_scale(std::size_t n, std::size_t r);

struct LayoutCheck {
  bool covers = false;     // disjoint, consecutive, union = {0..2n-1}
  bool lengths = false;    // every brick length in [r, 4r]
  bool symmetric = false;  // L_k = 2n-1-L_{-k}
  bool ok() const noexcept { return covers && lengths && symmetric; }
};

LayoutCheck check_layout(const BrickLayout& layout);

/// The random partition Lambda: cut between every pair of consecutive
/// invisible bricks.
struct PartitionLayout {
  BrickLayout layout;
  ThresholdSet S;
  std::vector<bool> visible;             // per brick, same order as layout.bricks
  std::vector<Interval> lambda;          // parts, left to right
  std::vector<Interval> lambda_bricks;   // for each part, the brick positions it spans
  std::size_t M = 0;
};

PartitionLayout partition(const BrickLayout& layout, const ThresholdSet& s);

struct AdmissibilityReport {
  // (1) every part meeting S is a union of at most M consecutive bricks lying
  // within L_{-m+1}..L_{-1} or within L_1..L_{m-1}.
  bool condition1 = false;
  // (2) every union of at most M consecutive bricks within one half holds at
  // most M points of S.
  bool condition2 = false;
  bool visibility_symmetric = false;  // visible(L_k) == visible(L_{-k}), 1 <= k < m
  bool gap_property = false;
  bool parts_refine_bricks = false;
  std::size_t touching_parts = 0;
  std::size_t max_part_bricks = 0;   // among parts meeting S
  std::size_t max_part_points = 0;   // max #(J cap S) over parts of Lambda
  std::size_t max_window_points = 0; // max #(J cap S) over admissible blocks
  bool admissible() const noexcept { return condition1 && condition2; }
};

AdmissibilityReport check_admissibility(const PartitionLayout& p);

/// P[J] as a dense principal submatrix of P_{2n}.
Eigen::MatrixXcd projection_block(std::size_t two_n, const Interval& j);

/// max over parts J meeting S of lambda_1(P[J] D^eps[J] P[J]), 0 when no part
/// meets S. Each block is solved densely; a block longer than kDenseEigCap
/// throws std::length_error naming the part.
double block_eig_max(const FourierDiagonal& d, const PartitionLayout& p);

/// Brick boundaries, visibility, Lambda and S as a JSON document.
std::string partition_json(const PartitionLayout& p, const AdmissibilityReport& report);

}  // namespace toeplab
