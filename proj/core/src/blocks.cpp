// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "toeplab/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "json.hpp"

namespace toeplab {
namespace {

double log_threshold(std::size_t n) { return std::sqrt(2.0 * std::log(static_cast<double>(n))); }

double top_eigenvalue(const HermitianOp& op, const LanczosOptions& options) {
  return top_eig_lanczos(op, options).lambda_max;
}

}  // namespace

bool ThresholdSet::contains(std::size_t j) const {
  return std::binary_search(indices.begin(), indices.end(), j);
}

std::size_t ThresholdSet::count_in(std::size_t first, std::size_t last) const {
  if (last < first) return 0;
  const auto lo = std::lower_bound(indices.begin(), indices.end(), first);
  const auto hi = std::upper_bound(lo, indices.end(), last);
  return static_cast<std::size_t>(hi - lo);
}

ThresholdSet threshold_set(const FourierDiagonal& d, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("threshold_set: epsilon must be positive");
  const std::size_t n = d.two_n() / 2;
  if (n < 3) throw std::invalid_argument("threshold_set: n must be at least 3");
  ThresholdSet s;
  s.epsilon = epsilon;
  s.n = n;
  s.threshold = epsilon * log_threshold(n);
  for (std::size_t j = 0; j < d.two_n(); ++j) {
    if (std::abs(d.d[j]) >= s.threshold) s.indices.push_back(j);
  }
  return s;
}

FourierDiagonal sparse_diag(const FourierDiagonal& d, const ThresholdSet& s) {
  if (d.two_n() != 2 * s.n) throw std::invalid_argument("sparse_diag: size mismatch");
  FourierDiagonal out;
  out.variant = d.variant;
  out.d.assign(d.two_n(), 0.0);
  for (std::size_t j : s.indices) out.d[j] = d.d[j];
  return out;
}

TruncationGap eps_truncation_gap(const FourierDiagonal& d, double epsilon,
                                 const LanczosOptions& options) {
  const ThresholdSet s = threshold_set(d, epsilon);
  const FourierDiagonal sparse = sparse_diag(d, s);
  TruncationGap out;
  out.lambda_full = top_eigenvalue(pdp_operator(d), options);
  out.lambda_sparse = top_eigenvalue(pdp_operator(sparse), options);
  out.lhs = std::abs(out.lambda_full - out.lambda_sparse);
  out.bound = s.threshold;
  out.solver_slack = options.tol * (std::max(1.0, std::abs(out.lambda_full)) +
                                    std::max(1.0, std::abs(out.lambda_sparse)));
  return out;
}

std::size_t brick_scale(std::size_t n) {
  if (n < 2) throw std::invalid_argument("brick_scale: n must be at least 2");
  const auto c = static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n))));
  return c * c * c;
}

std::size_t admissible_multiplicity(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("admissible_multiplicity: epsilon must be positive");
  return 4 + static_cast<std::size_t>(std::ceil(12.0 / (epsilon * epsilon)));
}

std::int64_t BrickLayout::brick_of(std::size_t j) const {
  if (j >= 2 * n) throw std::out_of_range("brick_of: index outside {0..2n-1}");
  const auto it = std::upper_bound(bricks.begin(), bricks.end(), j,
                                   [](std::size_t x, const Interval& b) { return x < b.first; });
  return static_cast<std::int64_t>(it - bricks.begin()) - 1 - m;
}

BrickLayout build_bricks(std::size_t n) { return build_bricks_with_scale(n, brick_scale(n)); }

BrickLayout build_bricks_with_scale(std::size_t n, std::size_t r) {
  if (r == 0) throw std::invalid_argument("build_bricks: scale r must be positive");
  if (n < r) {
    throw std::invalid_argument("build_bricks: n = " + std::to_string(n) + " is below the brick scale r = " +
                                std::to_string(r) + "; the scheme needs n >= r");
  }
  const std::size_t q = n / r;
  const std::size_t rem = n % r;
  BrickLayout layout;
  layout.n = n;
  layout.r = r;
  layout.m = static_cast<std::int64_t>(q) - 1;
  const double cube = std::pow(std::log(static_cast<double>(std::max<std::size_t>(n, 2))), 3.0);
  layout.gap = std::min(static_cast<std::size_t>(std::floor(cube)), r - 1);

  const std::size_t centre_first = n - r - rem;
  for (std::size_t k = q - 1; k >= 1; --k) {
    const std::size_t first = centre_first - k * r;
    layout.bricks.push_back({first, first + r - 1});
  }
  layout.bricks.push_back({centre_first, n + r + rem - 1});
  for (std::size_t k = 1; k + 1 <= q; ++k) {
    const std::size_t first = n + r + rem + (k - 1) * r;
    layout.bricks.push_back({first, first + r - 1});
  }
  return layout;
}

LayoutCheck check_layout(const BrickLayout& layout) {
  LayoutCheck c;
  const std::size_t two_n = 2 * layout.n;
  const auto& b = layout.bricks;
  c.covers = !b.empty() && b.size() == static_cast<std::size_t>(2 * layout.m + 1) && b.front().first == 0 &&
             b.back().last + 1 == two_n;
  for (std::size_t i = 0; c.covers && i < b.size(); ++i) {
    if (b[i].last < b[i].first) c.covers = false;
    if (i > 0 && b[i].first != b[i - 1].last + 1) c.covers = false;
  }
  c.lengths = !b.empty();
  for (const auto& x : b) {
    if (x.length() < layout.r || x.length() > 4 * layout.r) c.lengths = false;
  }
  c.symmetric = c.covers;
  for (std::size_t i = 0; c.symmetric && i < b.size(); ++i) {
    const Interval& mirror = b[b.size() - 1 - i];
    if (b[i].first != two_n - 1 - mirror.last || b[i].last != two_n - 1 - mirror.first) c.symmetric = false;
  }
  return c;
}

PartitionLayout partition(const BrickLayout& layout, const ThresholdSet& s) {
  if (s.n != layout.n) throw std::invalid_argument("partition: layout and threshold set disagree on n");
  PartitionLayout p;
  p.layout = layout;
  p.S = s;
  p.M = admissible_multiplicity(s.epsilon);
  const std::size_t count = layout.bricks.size();
  p.visible.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    p.visible[i] = s.count_in(layout.bricks[i].first, layout.bricks[i].last) > 0;
  }
  std::size_t start = 0;
  for (std::size_t i = 1; i <= count; ++i) {
    if (i == count || (!p.visible[i - 1] && !p.visible[i])) {
      p.lambda_bricks.push_back({start, i - 1});
      p.lambda.push_back({layout.bricks[start].first, layout.bricks[i - 1].last});
      start = i;
    }
  }
  return p;
}

AdmissibilityReport check_admissibility(const PartitionLayout& p) {
  AdmissibilityReport rep;
  const BrickLayout& layout = p.layout;
  const std::size_t two_n = 2 * layout.n;
  const std::int64_t m = layout.m;
  const auto label = [m](std::size_t pos) { return static_cast<std::int64_t>(pos) - m; };

  rep.parts_refine_bricks = !p.lambda.empty() && p.lambda.front().first == 0 && p.lambda.back().last + 1 == two_n;
  for (std::size_t i = 0; i < p.lambda.size(); ++i) {
    const Interval& part = p.lambda[i];
    const Interval& span = p.lambda_bricks[i];
    if (part.first != layout.bricks[span.first].first || part.last != layout.bricks[span.last].last) {
      rep.parts_refine_bricks = false;
    }
    if (i > 0 && part.first != p.lambda[i - 1].last + 1) rep.parts_refine_bricks = false;
  }

  rep.gap_property = true;
  for (const Interval& part : p.lambda) {
    if (part.first != 0 && p.S.count_in(part.first, part.first + layout.gap) > 0) rep.gap_property = false;
    if (part.last != two_n - 1 && p.S.count_in(part.last - layout.gap, part.last) > 0) rep.gap_property = false;
  }

  rep.visibility_symmetric = true;
  for (std::int64_t k = 1; k < m; ++k) {
    if (p.visible[static_cast<std::size_t>(m + k)] != p.visible[static_cast<std::size_t>(m - k)]) {
      rep.visibility_symmetric = false;
    }
  }

  rep.condition1 = true;
  for (std::size_t i = 0; i < p.lambda.size(); ++i) {
    const std::size_t points = p.S.count_in(p.lambda[i].first, p.lambda[i].last);
    rep.max_part_points = std::max(rep.max_part_points, points);
    if (points == 0) continue;
    ++rep.touching_parts;
    const Interval& span = p.lambda_bricks[i];
    const std::size_t bricks = span.length();
    rep.max_part_bricks = std::max(rep.max_part_bricks, bricks);
    const std::int64_t lo = label(span.first);
    const std::int64_t hi = label(span.last);
    const bool left_half = lo >= -m + 1 && hi <= -1;
    const bool right_half = lo >= 1 && hi <= m - 1;
    if (!(left_half || right_half) || bricks > p.M) rep.condition1 = false;
  }

  // Counts are nonnegative, so the widest window in each half dominates.
  const auto half_max = [&](std::int64_t lo_label, std::int64_t hi_label) {
    std::size_t best = 0;
    if (hi_label < lo_label) return best;
    const auto width = std::min<std::int64_t>(static_cast<std::int64_t>(p.M), hi_label - lo_label + 1);
    for (std::int64_t a = lo_label; a + width - 1 <= hi_label; ++a) {
      const std::size_t pts = p.S.count_in(layout.brick(a).first, layout.brick(a + width - 1).last);
      best = std::max(best, pts);
    }
    return best;
  };
  rep.max_window_points = std::max(half_max(-m + 1, -1), half_max(1, m - 1));
  rep.condition2 = rep.max_window_points <= p.M;
  return rep;
}

Eigen::MatrixXcd projection_block(std::size_t two_n, const Interval& j) {
  const auto len = static_cast<Eigen::Index>(j.length());
  Eigen::MatrixXcd block(len, len);
  for (Eigen::Index a = 0; a < len; ++a)
    for (Eigen::Index b = 0; b < len; ++b)
      block(a, b) = p_entry(static_cast<std::int64_t>(j.first) + a, static_cast<std::int64_t>(j.first) + b, two_n);
  return block;
}

double block_eig_max(const FourierDiagonal& d, const PartitionLayout& p) {
  const std::size_t two_n = d.two_n();
  if (two_n != 2 * p.layout.n) throw std::invalid_argument("block_eig_max: size mismatch");
  double best = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < p.lambda.size(); ++i) {
    const Interval& part = p.lambda[i];
    std::vector<std::size_t> local;
    for (std::size_t j : p.S.indices) {
      if (part.contains(j)) local.push_back(j - part.first);
    }
    if (local.empty()) continue;
    if (part.length() > kDenseEigCap) {
      throw std::length_error("block_eig_max: part " + std::to_string(i) + " [" + std::to_string(part.first) +
                              ", " + std::to_string(part.last) + "] has length " +
                              std::to_string(part.length()) + " > dense cap " + std::to_string(kDenseEigCap));
    }
    // P[J] D[J] P[J] = X diag(d_S) X* with X the S-columns of P[J]. Its
    // nonzero spectrum is that of G^{1/2} diag(d_S) G^{1/2}, G = X* X.
    const Eigen::MatrixXcd pj = projection_block(two_n, part);
    const auto k = static_cast<Eigen::Index>(local.size());
    Eigen::MatrixXcd x(pj.rows(), k);
    Eigen::VectorXd ds(k);
    for (Eigen::Index c = 0; c < k; ++c) {
      x.col(c) = pj.col(static_cast<Eigen::Index>(local[static_cast<std::size_t>(c)]));
      ds[c] = d.d[part.first + local[static_cast<std::size_t>(c)]];
    }
    const Eigen::MatrixXcd g = x.adjoint() * x;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ge(g);
    const Eigen::VectorXd root = ge.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXcd groot = ge.eigenvectors() * root.cast<cplx>().asDiagonal() * ge.eigenvectors().adjoint();
    const Eigen::MatrixXcd h = groot * ds.cast<cplx>().asDiagonal() * groot;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> he(h, Eigen::EigenvaluesOnly);
    double top = he.eigenvalues()[k - 1];
    if (static_cast<std::size_t>(k) < part.length()) top = std::max(top, 0.0);
    best = any ? std::max(best, top) : top;
    any = true;
  }
  return any ? best : 0.0;
}

std::string partition_json(const PartitionLayout& p, const AdmissibilityReport& report) {
  using nlohmann::json;
  json bricks = json::array();
  for (std::size_t i = 0; i < p.layout.bricks.size(); ++i) {
    const auto& b = p.layout.bricks[i];
    bricks.push_back({{"label", static_cast<std::int64_t>(i) - p.layout.m},
                      {"first", b.first},
                      {"last", b.last},
                      {"visible", static_cast<bool>(p.visible[i])},
                      {"points", p.S.count_in(b.first, b.last)}});
  }
  json parts = json::array();
  for (std::size_t i = 0; i < p.lambda.size(); ++i) {
    parts.push_back({{"first", p.lambda[i].first},
                     {"last", p.lambda[i].last},
                     {"first_brick", static_cast<std::int64_t>(p.lambda_bricks[i].first) - p.layout.m},
                     {"last_brick", static_cast<std::int64_t>(p.lambda_bricks[i].last) - p.layout.m},
                     {"points", p.S.count_in(p.lambda[i].first, p.lambda[i].last)}});
  }
  json doc = {{"n", p.layout.n},
              {"r", p.layout.r},
              {"m", p.layout.m},
              {"epsilon", p.S.epsilon},
              {"threshold", p.S.threshold},
              {"M", p.M},
              {"S", p.S.indices},
              {"bricks", bricks},
              {"Lambda", parts},
              {"admissibility",
               {{"condition1", report.condition1},
                {"condition2", report.condition2},
                {"visibility_symmetric", report.visibility_symmetric},
                {"gap_property", report.gap_property},
                {"touching_parts", report.touching_parts},
                {"max_part_bricks", report.max_part_bricks},
                {"max_part_points", report.max_part_points},
                {"max_window_points", report.max_window_points}}}};
  return doc.dump(2);
}

}  // namespace toeplab
