// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "toeplab/harness/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>
#include <stdexcept>

#include "../parallel.hpp"
#include "json.hpp"
#include "toeplab/blocks.hpp"
#include "toeplab/ensemble.hpp"
#include "toeplab/harness/experiments.hpp"
#include "toeplab/harness/io.hpp"
#include "toeplab/lindeberg.hpp"
#include "toeplab/seeding.hpp"
#include "toeplab/spectra.hpp"
#include "toeplab/toeplitz.hpp"
#include "toeplab/varopt.hpp"

namespace toeplab {
namespace {

constexpr std::uint64_t kVerifySeed = 20260101;
constexpr double kK1Squared = 0.686981293033114600949413;
constexpr double kK1Theorem = 0.8288;

std::string g(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string frac(std::size_t hit, std::size_t total) { return std::to_string(hit) + "/" + std::to_string(total); }

std::uint64_t seed_for(int id, std::uint64_t stream = 0) {
  return derive_seed(kVerifySeed, {static_cast<std::uint64_t>(id), stream});
}

EntrySpec family(Family f) {
  EntrySpec s;
  s.family = f;
  return s;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::vector<cplx> random_unit(std::size_t dim, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<cplx> v(dim);
  double norm = 0.0;
  for (auto& x : v) {
    x = cplx(rng.normal(), rng.normal());
    norm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

// 1. Variational constant.
bool criterion_k1(std::string& out) {
  const AutocorrResult r = maximize_K1(4096);
  const double k1 = r.value;
  const double err_sq = std::abs(k1 * k1 - kK1Squared);
  const double err_thm = std::abs(k1 - kK1Theorem);
  std::vector<double> values;
  for (std::size_t N : {512, 1024, 2048}) values.push_back(maximize_K1(N).value);
  values.push_back(k1);
  std::vector<double> inc;
  for (std::size_t i = 1; i < values.size(); ++i) inc.push_back(std::abs(values[i] - values[i - 1]));
  bool shrinking = true;
  for (std::size_t i = 1; i < inc.size(); ++i) shrinking = shrinking && inc[i] < inc[i - 1];
  out = "K1^2 err " + g(err_sq, 3) + " (tol 1e-4), |K1-0.8288| " + g(err_thm, 3) + " (tol 1e-4), increments " +
        g(inc[0], 3) + " > " + g(inc[1], 3) + " > " + g(inc[2], 3);
  return err_sq <= 1e-4 && err_thm <= 1e-4 && shrinking;
}

// 2. Scaling law.
bool criterion_scaling(std::string& out) {
  constexpr std::size_t kPerUnit = 4096;
  const double k1 = k_delta(1.0, kPerUnit);
  const double half = std::abs(k_delta(0.5, kPerUnit) * std::numbers::sqrt2 - k1);
  const double four = std::abs(k_delta(4.0, kPerUnit) / 2.0 - k1);
  out = "|sqrt2 K_1/2 - K1| " + g(half, 3) + ", |K_4/2 - K1| " + g(four, 3) + " (tol 1e-6)";
  return half <= 1e-6 && four <= 1e-6;
}

// 3. Norm chain.
bool criterion_norm_chain(std::string& out) {
  const RelationReport r = verify_relation();
  out = "sqrt2|Pi_512|^2 " + g(r.pi_estimate, 7) + ", K1 " + g(r.k1, 7) + ", sin " + g(r.sin_estimate, 7) +
        ", gap " + g(r.gap_pi_k1, 3) + " (tol 0.05), |sin-K1| " + g(std::abs(r.gap_sin_k1), 3) + " (tol 2e-3)" +
        (r.curve_nondecreasing ? ", curve nondecreasing" : ", curve NOT nondecreasing") +
        (r.pi_below_k1 ? ", below K1" : ", NOT below K1");
  return r.curve_nondecreasing && r.pi_below_k1 && r.pi_within_allowance && r.sin_within_tol;
}

// 4. Spectral identity.
bool criterion_spectral(const ExperimentConfig& cfg, std::string& out) {
  const std::vector<std::size_t> sizes{4, 8, 16, 32, 64, 128};
  constexpr std::size_t kInstances = 50;
  struct Row {
    double identity = 0.0;
    double lanczos = 0.0;
    bool negative = false;
  };
  std::vector<Row> rows(sizes.size() * kInstances);
  detail::parallel_for(rows.size(), cfg.worker_count(), [&](std::size_t idx) {
    const std::size_t n = sizes[idx / kInstances];
    const std::uint64_t seed = derive_seed(seed_for(4), {n, idx % kInstances});
    const EntryArray entries = sample_entries(family(Family::gaussian), n, seed);
    const Eigen::MatrixXd t = materialize_toeplitz(circle_adjusted_toeplitz(entries)) / std::sqrt(static_cast<double>(n));
    const DenseSpectrum ts = dense_sym_eig(t, false);
    const FourierDiagonal d = circle_adjusted_diagonal(entries);
    const DenseSpectrum ps = dense_sym_eig(materialize_pdp(d), false);
    // spec(PDP) is spec(T / sqrt(2n)) together with n zeros from the kernel of P.
    std::vector<double> expected(2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) expected[i] = ts.values[static_cast<Eigen::Index>(i)] / std::numbers::sqrt2;
    std::sort(expected.begin(), expected.end());
    double spectrum_err = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) {
      spectrum_err = std::max(spectrum_err, std::abs(ps.values[static_cast<Eigen::Index>(i)] - expected[i]));
    }
    const double lambda_t = ts.values[ts.values.size() - 1];
    const double lambda_p = ps.values[ps.values.size() - 1];
    LanczosOptions lo;
    lo.tol = 1e-12;
    lo.max_iter = 4000;
    lo.seed = derive_seed(seed, {1});
    const double lambda_l = top_eig_lanczos(pdp_operator(d), lo).lambda_max;
    rows[idx] = {std::max(std::numbers::sqrt2 * spectrum_err, std::abs(std::max(lambda_t, 0.0) - std::numbers::sqrt2 * lambda_p)),
                 std::abs(lambda_l - lambda_p), lambda_t < 0.0};
  });
  double worst_identity = 0.0, worst_lanczos = 0.0;
  std::size_t negative = 0;
  for (const auto& r : rows) {
    negative += r.negative;
    worst_identity = std::max(worst_identity, r.identity);
    worst_lanczos = std::max(worst_lanczos, r.lanczos);
  }
  out = "300 instances, max spectrum / top-eigenvalue identity error " + g(worst_identity, 3) +
        ", max |lanczos - dense| " + g(worst_lanczos, 3) + " (tol 1e-8); " + std::to_string(negative) +
        " instances with lambda(T) < 0, where lambda(PDP) = 0";
  return worst_identity <= 1e-8 && worst_lanczos <= 1e-8;
}

// 5. Independence of b_n.
bool criterion_bn(std::string& out) {
  constexpr std::size_t kCases = 100;
  double worst = 0.0;
  for (std::size_t c = 0; c < kCases; ++c) {
    const std::size_t n = std::size_t{4} << (c % 7);
    const std::uint64_t seed = derive_seed(seed_for(5), {c});
    const EntryArray entries = sample_entries(family(Family::gaussian), n, seed);
    const ToeplitzSym t = circle_adjusted_toeplitz(entries);
    CounterRng rng(derive_seed(seed, {1}));
    const double other = 5.0 * rng.normal();
    const FourierDiagonal d1 =
        fourier_diagonal(embed_circulant(t, std::numbers::sqrt2 * entries.values[n]), DiagonalVariant::circle_adjusted);
    const FourierDiagonal d2 = fourier_diagonal(embed_circulant(t, other), DiagonalVariant::circle_adjusted);
    const auto v = random_unit(2 * n, derive_seed(seed, {2}));
    const auto y1 = apply_pdp(d1, v);
    const auto y2 = apply_pdp(d2, v);
    for (std::size_t i = 0; i < y1.size(); ++i) worst = std::max(worst, std::abs(y1[i] - y2[i]));
  }
  out = "100 cases, max |PD(b)P v - PD(b')P v| " + g(worst, 3) + " (tol 1e-10)";
  return worst <= 1e-10;
}

// 6. Covariance of the Fourier diagonal.
bool criterion_covariance(const ExperimentConfig& cfg, std::string& out) {
  const double perturb = cfg.cov_perturbation;
  const auto model = [&](std::size_t j, std::size_t k, std::size_t n) { return cov_d(j, k, n) + perturb; };

  double worst_exact = 0.0;
  for (std::size_t n = 3; n <= 64; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t k = 0; k <= n; ++k)
        worst_exact = std::max(worst_exact, std::abs(model(j, k, n) - cov_d_bruteforce(j, k, n)));

  double worst_dirichlet = 0.0;
  for (std::size_t n = 1; n <= 64; ++n) {
    for (std::size_t m = 0; m <= 2 * n; ++m) {
      double direct = 0.0;
      for (std::size_t l = 1; l < n; ++l) {
        const std::size_t phase = (m * l) % (2 * n);
        direct += std::cos(std::numbers::pi * static_cast<double>(phase) / static_cast<double>(n));
      }
      worst_dirichlet = std::max(worst_dirichlet, std::abs(direct - dirichlet_sum(m, n)));
    }
  }

  constexpr std::size_t kN = 32;
  constexpr std::size_t kTrials = 100000;
  constexpr std::size_t kDim = kN + 1;
  std::vector<double> samples(kTrials * kDim);
  detail::parallel_for(kTrials, cfg.worker_count(), [&](std::size_t t) {
    const FourierDiagonal d =
        circle_adjusted_diagonal(sample_entries(family(Family::gaussian), kN, derive_seed(seed_for(6), {t})));
    std::copy(d.d.begin(), d.d.begin() + kDim, samples.begin() + static_cast<std::ptrdiff_t>(t * kDim));
  });
  double worst_z = 0.0;
  std::vector<double> prod(kTrials);
  for (std::size_t j = 0; j < kDim; ++j) {
    for (std::size_t k = j; k < kDim; ++k) {
      for (std::size_t t = 0; t < kTrials; ++t) prod[t] = samples[t * kDim + j] * samples[t * kDim + k];
      const auto ms = detail::mean_stderr(prod);
      worst_z = std::max(worst_z, std::abs(ms.mean - model(j, k, kN)) / ms.se);
    }
  }
  out = "max |cov_d - bruteforce| " + g(worst_exact, 3) + " (tol 1e-12), max MC z " + g(worst_z, 3) +
        " (tol 5), max dirichlet err " + g(worst_dirichlet, 3) + " (tol 1e-12)";
  if (perturb != 0.0) out += ", cov_perturbation " + g(perturb);
  return worst_exact <= 1e-12 && worst_z <= 5.0 && worst_dirichlet <= 1e-12;
}

// 7. Truncation inequality.
bool criterion_truncation(const ExperimentConfig& cfg, std::string& out) {
  constexpr std::size_t kN = 1024;
  constexpr std::size_t kTrials = 100;
  const std::vector<double> eps{0.2, 0.5};
  std::vector<TruncationGap> gaps(kTrials * eps.size());
  detail::parallel_for(gaps.size(), cfg.worker_count(), [&](std::size_t idx) {
    const std::size_t t = idx % kTrials;
    const std::uint64_t seed = derive_seed(seed_for(7), {t});
    const FourierDiagonal d = circle_adjusted_diagonal(sample_entries(family(Family::gaussian), kN, seed));
    LanczosOptions lo;
    lo.tol = 1e-10;
    lo.max_iter = 8000;
    lo.seed = derive_seed(seed, {1});
    gaps[idx] = eps_truncation_gap(d, eps[idx / kTrials], lo);
  });
  bool pass = true;
  out.clear();
  for (std::size_t e = 0; e < eps.size(); ++e) {
    std::size_t held = 0;
    double worst_ratio = 0.0;
    for (std::size_t t = 0; t < kTrials; ++t) {
      const TruncationGap& gp = gaps[e * kTrials + t];
      held += gp.lhs <= gp.bound + gp.solver_slack;
      worst_ratio = std::max(worst_ratio, gp.lhs / gp.bound);
    }
    pass = pass && held == kTrials;
    out += (e ? ", " : "") + std::string("eps ") + g(eps[e]) + ": " + frac(held, kTrials) + " (max lhs/bound " +
           g(worst_ratio, 3) + ")";
  }
  return pass;
}

// 8. Partition statistics.
bool criterion_partition(const ExperimentConfig& cfg, std::string& out) {
  constexpr std::size_t kN = 4096;
  constexpr std::size_t kTrials = 200;
  constexpr double kEps = 0.5;
  const BrickLayout layout = build_bricks(kN);
  struct Row {
    bool layout_ok = false;
    AdmissibilityReport rep;
  };
  std::vector<Row> rows(kTrials);
  detail::parallel_for(kTrials, cfg.worker_count(), [&](std::size_t t) {
    const FourierDiagonal d =
        circle_adjusted_diagonal(sample_entries(family(Family::gaussian), kN, derive_seed(seed_for(8), {t})));
    const PartitionLayout p = partition(layout, threshold_set(d, kEps));
    rows[t] = {check_layout(p.layout).ok(), check_admissibility(p)};
  });
  std::size_t lay = 0, adm = 0, c1 = 0, c2 = 0, vis = 0;
  std::vector<double> window_points;
  for (const auto& r : rows) {
    lay += r.layout_ok;
    adm += r.rep.admissible();
    c1 += r.rep.condition1;
    c2 += r.rep.condition2;
    vis += r.rep.visibility_symmetric;
    window_points.push_back(static_cast<double>(r.rep.max_window_points));
  }
  out = "r " + std::to_string(layout.r) + ", m " + std::to_string(layout.m) + ", M " +
        std::to_string(admissible_multiplicity(kEps)) + "; bricks " + frac(lay, kTrials) + ", admissible " +
        frac(adm, kTrials) + " (cond1 " + frac(c1, kTrials) + ", cond2 " + frac(c2, kTrials) +
        ", median max window points " + g(quantile(window_points, 0.5)) + "; need >= 95%), visibility " +
        frac(vis, kTrials);
  return lay == kTrials && static_cast<double>(adm) >= 0.95 * kTrials && vis == kTrials;
}

// 9. Block reduction.
bool criterion_block(const ExperimentConfig& cfg, std::string& out) {
  constexpr std::size_t kN = 512;
  constexpr std::size_t kTrials = 100;
  constexpr double kEps = 0.3;
  constexpr std::size_t kFineScale = 64;
  const BrickLayout natural = build_bricks(kN);
  const BrickLayout fine = build_bricks_with_scale(kN, kFineScale);
  std::vector<double> gap(kTrials), gap_fine(kTrials);
  detail::parallel_for(kTrials, cfg.worker_count(), [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(seed_for(9), {t});
    const FourierDiagonal d = circle_adjusted_diagonal(sample_entries(family(Family::gaussian), kN, seed));
    const ThresholdSet s = threshold_set(d, kEps);
    LanczosOptions lo;
    lo.tol = 1e-11;
    lo.max_iter = 8000;
    lo.seed = derive_seed(seed, {1});
    const double full = top_eig_lanczos(pdp_operator(sparse_diag(d, s)), lo).lambda_max;
    gap[t] = std::abs(full - block_eig_max(d, partition(natural, s)));
    gap_fine[t] = std::abs(full - block_eig_max(d, partition(fine, s)));
  });
  const double med = quantile(gap, 0.5);
  const double p95 = quantile(gap, 0.95);
  out = "m " + std::to_string(natural.m) + " (" + std::to_string(natural.bricks.size()) + " brick), median " +
        g(med, 3) + " (tol 1.0), p95 " + g(p95, 3) + " (tol 3.0); at r=" + std::to_string(kFineScale) +
        ": median " + g(quantile(gap_fine, 0.5), 3) + ", p95 " + g(quantile(gap_fine, 0.95), 3);
  return med <= 1.0 && p95 <= 3.0;
}

// 10. Swap inequality.
bool criterion_lindeberg(const ExperimentConfig& cfg, std::string& out) {
  const EntrySpec x = family(Family::rademacher);
  const EntrySpec y = family(Family::gaussian);
  const unsigned threads = cfg.worker_count();

  const SwapReport trivial =
      swap_experiment(x, y, linear_map(1, 4, {0.5, -0.5, 0.5, 0.5}), quadratic_functional(1, {1.0}, {0.3}, 0.0), 20000,
                      seed_for(10, 0), threads);
  const bool trivial_ok = trivial.bound == 0.0 && trivial.lhs <= 3.0 * trivial.lhs_stderr;

  const ExactSwap exact = swap_exact_r1(x, y, identity_map(1), cos_functional());
  const double target = std::abs(std::cos(1.0) - std::exp(-0.5));
  const SwapReport cosine = swap_experiment(x, y, identity_map(1), cos_functional(), 20000, seed_for(10, 1), threads);
  const bool cosine_ok = std::abs(exact.lhs - target) <= 1e-10 && exact.bound >= exact.lhs && cosine.holds();

  std::size_t held = 0;
  const auto configs = moderate_deviation_configs();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& c = configs[i];
    const SwapReport r = swap_experiment(x, y, moderate_statistic(c.n), gaussian_bump(c.height, c.width), 4000,
                                         derive_seed(seed_for(10, 2), {i}), threads);
    held += r.holds();
  }
  out = "trivial bound " + g(trivial.bound) + ", lhs " + g(trivial.lhs, 3) + " (3 se " +
        g(3.0 * trivial.lhs_stderr, 3) + "); cosine exact lhs " + g(exact.lhs, 10) + " vs " + g(target, 10) +
        ", exact bound " + g(exact.bound, 4) + "; moderate " + frac(held, configs.size());
  return trivial_ok && cosine_ok && held == configs.size();
}

// 11. Trend of the Monte-Carlo ratio.
bool criterion_trend(const ExperimentConfig& cfg, std::string& out) {
  std::map<std::string, std::vector<SizeSummary>> by_family;
  for (Family f : {Family::gaussian, Family::rademacher}) {
    ExperimentConfig c;
    c.ensemble = family(f);
    c.n_list = {128, 512, 2048, 8192};
    c.trials = 100;
    c.master_seed = seed_for(11, static_cast<std::uint64_t>(f));
    c.threads = cfg.threads;
    by_family[family_name(f)] = simulate(c).summary;
  }
  bool pass = true;
  out.clear();
  for (const auto& [name, summary] : by_family) {
    bool decreasing = true;
    std::string means;
    for (std::size_t i = 0; i < summary.size(); ++i) {
      means += (i ? " " : "") + g(summary[i].mean, 4);
      if (i > 0) {
        decreasing = decreasing && std::abs(summary[i].mean - kK1Theorem) < std::abs(summary[i - 1].mean - kK1Theorem);
      }
      if (summary[i].failures > 0) means += "(" + std::to_string(summary[i].failures) + " failed)";
    }
    const double last = summary.back().mean;
    const bool in_range = last >= 0.70 && last <= 1.00;
    pass = pass && decreasing && in_range;
    out += name + " means " + means + (decreasing ? "" : " [distance not decreasing]") +
           (in_range ? "" : " [out of range]") + "; ";
  }
  const double spread = std::abs(by_family["gaussian"].back().mean - by_family["rademacher"].back().mean);
  out += "|gaussian - rademacher| at 8192 " + g(spread, 3) + " (tol 0.03)";
  return pass && spread <= 0.03;
}

std::map<std::string, std::string> snapshot(const std::string& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files[entry.path().filename().string()] = read_text_file(entry.path().string());
  }
  return files;
}

std::string strip_seconds(const CriterionResult& r) { return r.title + (r.pass ? " 1 " : " 0 ") + r.measured; }

// 12. Determinism.
bool criterion_determinism(const ExperimentConfig& cfg, std::string& out) {
  const std::string root = (std::filesystem::path(cfg.output_dir) / "determinism").string();
  std::size_t same = 0, total = 0;
  std::string differing;
  for (Subcommand s : {Subcommand::simulate, Subcommand::constant, Subcommand::blocks, Subcommand::invariance,
                       Subcommand::eigvec}) {
    ExperimentConfig c;
    c.subcommand = s;
    c.threads = cfg.threads;
    // Blocks needs n at least the brick scale (343 at n = 512).
    c.n_list = s == Subcommand::blocks ? std::vector<std::size_t>{512} : std::vector<std::size_t>{64, 128};
    c.trials = s == Subcommand::invariance ? 200 : 4;
    c.tolerances["constant_N"] = 512;
    c.tolerances["constant_kmax"] = 16;
    c.output_dir = (std::filesystem::path(root) / subcommand_name(s)).string();
    const auto run = [&] {
      switch (s) {
        case Subcommand::simulate: run_simulate(c); break;
        case Subcommand::constant: run_constant(c); break;
        case Subcommand::blocks: run_blocks(c); break;
        case Subcommand::invariance: run_invariance(c); break;
        case Subcommand::eigvec: run_eigvec(c); break;
        case Subcommand::verify: break;
      }
    };
    run();
    const auto first = snapshot(c.output_dir);
    run();
    const auto second = snapshot(c.output_dir);
    ++total;
    if (first == second && !first.empty()) {
      ++same;
    } else {
      differing += " " + subcommand_name(s);
    }
  }

  // Worker count must not change the bytes.
  ExperimentConfig one;
  one.n_list = {64, 256};
  one.trials = 8;
  one.threads = 1;
  ExperimentConfig many = one;
  many.threads = 4;
  const SimulateResult a = simulate(one);
  const SimulateResult b = simulate(many);
  ++total;
  if (trials_csv(a.trials, false) == trials_csv(b.trials, false) &&
      summary_json(one, a.summary) == summary_json(one, b.summary)) {
    ++same;
  } else {
    differing += " threads";
  }

  // Criteria outputs, timing aside.
  for (int id : {5, 6}) {
    ++total;
    if (strip_seconds(run_criterion(id, cfg)) == strip_seconds(run_criterion(id, cfg))) {
      ++same;
    } else {
      differing += " criterion" + std::to_string(id);
    }
  }
  out = "identical reruns " + frac(same, total) + (differing.empty() ? "" : ", differing:" + differing);
  return same == total;
}

}  // namespace

std::string criterion_title(int id) {
  switch (id) {
    case 1: return "variational constant";
    case 2: return "scaling law";
    case 3: return "norm chain";
    case 4: return "spectral identity";
    case 5: return "b_n independence";
    case 6: return "covariance";
    case 7: return "eps-truncation";
    case 8: return "partition statistics";
    case 9: return "block reduction";
    case 10: return "swap inequality";
    case 11: return "ratio trend";
    case 12: return "determinism";
    default: throw std::out_of_range("no criterion " + std::to_string(id));
  }
}

CriterionResult run_criterion(int id, const ExperimentConfig& cfg) {
  static const std::map<int, double> kBudget{{1, 60},  {2, 120}, {3, 300}, {4, 60},   {5, 10},  {6, 60},
                                             {7, 300}, {8, 600}, {9, 600}, {10, 300}, {11, 1800}, {12, 600}};
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  r.budget_seconds = kBudget.at(id);
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    switch (id) {
      case 1: ok = criterion_k1(r.measured); break;
      case 2: ok = criterion_scaling(r.measured); break;
      case 3: ok = criterion_norm_chain(r.measured); break;
      case 4: ok = criterion_spectral(cfg, r.measured); break;
      case 5: ok = criterion_bn(r.measured); break;
      case 6: ok = criterion_covariance(cfg, r.measured); break;
      case 7: ok = criterion_truncation(cfg, r.measured); break;
      case 8: ok = criterion_partition(cfg, r.measured); break;
      case 9: ok = criterion_block(cfg, r.measured); break;
      case 10: ok = criterion_lindeberg(cfg, r.measured); break;
      case 11: ok = criterion_trend(cfg, r.measured); break;
      case 12: ok = criterion_determinism(cfg, r.measured); break;
    }
  } catch (const std::exception& e) {
    ok = false;
    r.measured = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ok && r.seconds > r.budget_seconds) r.measured += "; over budget " + g(r.budget_seconds) + "s";
  r.pass = ok && r.seconds <= r.budget_seconds;
  return r;
}

std::string format_result(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.1f", r.seconds);
  return "criterion " + std::to_string(r.id) + (r.pass ? " PASS " : " FAIL ") + r.title + ": " + r.measured + " (" +
         secs + "s)";
}

std::vector<CriterionResult> run_verify(const ExperimentConfig& cfg,
                                        const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<int> ids = cfg.criteria;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  std::vector<CriterionResult> results;
  for (int id : ids) {
    results.push_back(run_criterion(id, cfg));
    if (on_result) on_result(results.back());
  }

  nlohmann::ordered_json doc;
  doc["version"] = version();
  nlohmann::ordered_json echo = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config_key_values(cfg)) echo[k] = v;
  doc["config"] = echo;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& r : results) {
    nlohmann::ordered_json item{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"measured", r.measured}};
    if (cfg.record_timing) {
      item["seconds"] = r.seconds;
      item["budget_seconds"] = r.budget_seconds;
    }
    list.push_back(item);
    all = all && r.pass;
  }
  doc["criteria"] = list;
  doc["all_pass"] = all;
  write_text_file((std::filesystem::path(cfg.output_dir) / "verify.json").string(), doc.dump(2) + "\n");
  write_manifest(cfg, cfg.output_dir, {"verify.json"});
  return results;
}

}  // namespace toeplab
