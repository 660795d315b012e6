// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "toeplab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include <Eigen/Eigenvalues>

#include "numeric_format.hpp"
#include "toeplab/seeding.hpp"
#include "toeplab/toeplitz.hpp"

namespace toeplab {
namespace {

using Vec = Eigen::VectorXcd;

Vec random_unit(std::size_t dim, std::uint64_t seed) {
  CounterRng rng(seed);
  Vec v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cplx{rng.normal(), rng.normal()};
  v.normalize();
  return v;
}

void apply_op(const HermitianOp& op, const Vec& in, Vec& out) {
  out.resize(in.size());
  op.apply(std::span<const cplx>(in.data(), static_cast<std::size_t>(in.size())),
           std::span<cplx>(out.data(), static_cast<std::size_t>(out.size())));
}

bool should_check(std::size_t m) { return m <= 30 || m % 5 == 0; }

}  // namespace

HermitianOp dense_operator(Eigen::MatrixXcd matrix) {
  auto shared = std::make_shared<const Eigen::MatrixXcd>(std::move(matrix));
  HermitianOp op;
  op.dim = static_cast<std::size_t>(shared->rows());
  op.apply = [shared](std::span<const cplx> in, std::span<cplx> out) {
    Eigen::Map<const Vec> x(in.data(), static_cast<Eigen::Index>(in.size()));
    Eigen::Map<Vec> y(out.data(), static_cast<Eigen::Index>(out.size()));
    y.noalias() = (*shared) * x;
  };
  return op;
}

HermitianOp pdp_operator(const FourierDiagonal& d) {
  auto shared = std::make_shared<const FourierDiagonal>(d);
  HermitianOp op;
  op.dim = d.two_n();
  op.apply = [shared](std::span<const cplx> in, std::span<cplx> out) {
    const auto y = apply_pdp(*shared, in);
    std::copy(y.begin(), y.end(), out.begin());
  };
  return op;
}

HermitianOp toeplitz_operator(const ToeplitzSym& t) {
  auto shared = std::make_shared<const ToeplitzSym>(t);
  HermitianOp op;
  op.dim = t.n();
  op.apply = [shared](std::span<const cplx> in, std::span<cplx> out) {
    const std::size_t n = in.size();
    std::vector<double> re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
      re[i] = in[i].real();
      im[i] = in[i].imag();
    }
    const auto tre = toeplitz_matvec(*shared, re);
    const auto tim = toeplitz_matvec(*shared, im);
    for (std::size_t i = 0; i < n; ++i) out[i] = cplx{tre[i], tim[i]};
  };
  return op;
}

double hermitian_defect(const HermitianOp& op, std::uint64_t seed, int probes) {
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    const Vec u = random_unit(op.dim, derive_seed(seed, {static_cast<std::uint64_t>(p), 0}));
    const Vec v = random_unit(op.dim, derive_seed(seed, {static_cast<std::uint64_t>(p), 1}));
    Vec au, av;
    apply_op(op, u, au);
    apply_op(op, v, av);
    const cplx lhs = u.dot(av);  // Eigen's dot conjugates the left operand
    const cplx rhs = std::conj(v.dot(au));
    const double scale = au.norm() + av.norm() + std::numeric_limits<double>::min();
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

EigReport top_eig_lanczos(const HermitianOp& op, const LanczosOptions& options,
                          std::span<const cplx> start) {
  const std::size_t dim = op.dim;
  if (dim == 0) throw std::invalid_argument("top_eig_lanczos: empty operator");
  if (!(options.tol > 0.0)) throw std::invalid_argument("top_eig_lanczos: tol must be positive");
  if (options.max_iter < 2) throw std::invalid_argument("top_eig_lanczos: max_iter must be at least 2");
  if (!start.empty() && start.size() != dim) {
    throw std::invalid_argument("top_eig_lanczos: start vector has wrong length");
  }

  Vec q;
  if (!start.empty()) {
    q = Eigen::Map<const Vec>(start.data(), static_cast<Eigen::Index>(dim));
    if (q.norm() == 0.0) {
      q = random_unit(dim, derive_seed(options.seed, {0}));
    } else {
      q.normalize();
    }
  } else {
    q = random_unit(dim, derive_seed(options.seed, {0}));
  }

  EigReport report;
  report.method = EigMethod::lanczos;
  double best_theta = -std::numeric_limits<double>::infinity();
  double best_residual = std::numeric_limits<double>::infinity();
  Vec best_vec;
  double prev_cycle_residual = std::numeric_limits<double>::infinity();
  bool fresh_restart_used = false;

  const std::size_t cap = std::max<std::size_t>(1, std::min(dim, options.max_basis));
  Eigen::MatrixXcd basis(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(cap));
  std::vector<double> alpha(cap), beta(cap);
  Vec w, ritz, a_ritz;

  while (true) {
    basis.col(0) = q;
    double cycle_residual = std::numeric_limits<double>::infinity();
    double anorm = 0.0;

    for (std::size_t j = 0; j < cap; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      Vec col = basis.col(jj);
      apply_op(op, col, w);
      ++report.iterations;

      const double a = col.dot(w).real();
      alpha[j] = a;
      w -= a * col;
      if (j > 0) w -= beta[j - 1] * basis.col(jj - 1);
      for (int pass = 0; pass < 2; ++pass) {
        const Vec coeffs = basis.leftCols(jj + 1).adjoint() * w;
        w -= basis.leftCols(jj + 1) * coeffs;
      }
      const double b = w.norm();
      beta[j] = b;
      anorm = std::max(anorm, std::abs(a) + b + (j > 0 ? beta[j - 1] : 0.0));

      const std::size_t m = j + 1;
      const bool breakdown = b <= 1e-14 * std::max(anorm, 1e-300);
      const bool budget_out = report.iterations + 1 >= options.max_iter;  // keep one for the residual
      const bool last = breakdown || m == cap || budget_out;
      if (!last && !should_check(m)) {
        basis.col(jj + 1) = w / b;
        continue;
      }

      Eigen::VectorXd diag(static_cast<Eigen::Index>(m));
      Eigen::VectorXd sub(static_cast<Eigen::Index>(m > 1 ? m - 1 : 0));
      for (std::size_t i = 0; i < m; ++i) diag[static_cast<Eigen::Index>(i)] = alpha[i];
      for (std::size_t i = 0; i + 1 < m; ++i) sub[static_cast<Eigen::Index>(i)] = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      if (m == 1) {
        tri.compute(Eigen::MatrixXd::Constant(1, 1, alpha[0]));
      } else {
        tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      }
      const auto top = static_cast<Eigen::Index>(m - 1);
      const double theta = tri.eigenvalues()[top];
      const Eigen::VectorXd s = tri.eigenvectors().col(top);
      report.ritz_history.push_back(theta);

      const double estimate = b * std::abs(s[top]);
      const double threshold = options.tol * std::max(1.0, std::abs(theta));
      if (estimate <= threshold || last) {
        ritz = basis.leftCols(static_cast<Eigen::Index>(m)) * s.cast<cplx>();
        ritz.normalize();
        apply_op(op, ritz, a_ritz);
        ++report.iterations;
        const double rq = ritz.dot(a_ritz).real();
        const double residual = (a_ritz - rq * ritz).norm();
        cycle_residual = residual;
        if (residual < best_residual) {
          best_residual = residual;
          best_theta = rq;
          best_vec = ritz;
        }
        if (residual <= options.tol * std::max(1.0, std::abs(rq))) {
          report.lambda_max = rq;
          report.residual = residual;
          report.eigenvector.assign(ritz.data(), ritz.data() + ritz.size());
          return report;
        }
        if (last || report.iterations + 1 >= options.max_iter) break;
      }
      basis.col(jj + 1) = w / b;
    }

    if (report.iterations + 1 >= options.max_iter) {
      throw ConvergenceError("top_eig_lanczos: no convergence within " +
                                 std::to_string(options.max_iter) + " applications (residual " +
                                 detail::shortest(best_residual) + ")",
                             best_theta, best_residual, report.iterations);
    }
    ++report.restarts;
    if (!fresh_restart_used && cycle_residual > 0.9 * prev_cycle_residual) {
      fresh_restart_used = true;
      q = random_unit(dim, derive_seed(options.seed, {1}));
    } else {
      q = best_vec;
    }
    prev_cycle_residual = cycle_residual;
  }
}

EigReport top_eig_lanczos(const HermitianOp& op, double tol, int max_iter, std::uint64_t seed) {
  LanczosOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  options.seed = seed;
  return top_eig_lanczos(op, options);
}

DenseSpectrum dense_sym_eig(const Eigen::MatrixXcd& matrix, bool with_vectors) {
  const auto dim = static_cast<std::size_t>(matrix.rows());
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("dense_sym_eig: matrix not square");
  if (dim > kDenseEigCap) {
    throw std::length_error("dense_sym_eig: dimension " + std::to_string(dim) +
                            " exceeds dense cap " + std::to_string(kDenseEigCap));
  }
  DenseSpectrum out;
  if (dim == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      matrix, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense_sym_eig: solver failed");
  out.values = es.eigenvalues();
  if (with_vectors) {
    out.vectors = es.eigenvectors();
    const Eigen::MatrixXcd rebuilt =
        out.vectors * out.values.cast<cplx>().asDiagonal() * out.vectors.adjoint();
    const double amax = matrix.cwiseAbs().maxCoeff();
    const double err = (matrix - rebuilt).cwiseAbs().maxCoeff();
    out.reconstruction_error = amax > 0.0 ? err / amax : err;
    if (out.reconstruction_error > 1e-8) {
      throw std::runtime_error("dense_sym_eig: reconstruction error " +
                               detail::shortest(out.reconstruction_error) + " exceeds 1e-8");
    }
  }
  return out;
}

DenseSpectrum dense_sym_eig(const Eigen::MatrixXd& matrix, bool with_vectors) {
  return dense_sym_eig(Eigen::MatrixXcd(matrix.cast<cplx>()), with_vectors);
}

EigReport top_eig_dense(const Eigen::MatrixXcd& matrix) {
  const DenseSpectrum spec = dense_sym_eig(matrix, true);
  EigReport report;
  report.method = EigMethod::dense;
  if (spec.values.size() == 0) return report;
  const Eigen::Index top = spec.values.size() - 1;
  report.lambda_max = spec.values[top];
  const Vec v = spec.vectors.col(top);
  report.residual = (matrix * v - report.lambda_max * v).norm();
  report.eigenvector.assign(v.data(), v.data() + v.size());
  return report;
}

double specnorm_row_bound(const Eigen::MatrixXcd& matrix) {
  const Eigen::MatrixXd a = matrix.cwiseAbs();
  const double row = a.rowwise().sum().maxCoeff();
  const double col = a.colwise().sum().maxCoeff();
  return std::sqrt(row * col);
}

}  // namespace toeplab
