// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "toeplab/harness/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "../numeric_format.hpp"
#include "../parallel.hpp"
#include "json.hpp"
#include "toeplab/blocks.hpp"
#include "toeplab/ensemble.hpp"
#include "toeplab/harness/io.hpp"
#include "toeplab/lindeberg.hpp"
#include "toeplab/seeding.hpp"
#include "toeplab/spectra.hpp"
#include "toeplab/toeplitz.hpp"
#include "toeplab/varopt.hpp"

namespace toeplab {
namespace {

using ojson = nlohmann::ordered_json;

constexpr double kK1SquaredReference = 0.686981293033114600949413;

double tol_or(const ExperimentConfig& cfg, const std::string& key, double fallback) {
  const auto it = cfg.tolerances.find(key);
  return it == cfg.tolerances.end() ? fallback : it->second;
}

EntryArray prepared_entries(const ExperimentConfig& cfg, std::size_t n, std::uint64_t seed) {
  EntryArray entries = sample_entries(cfg.ensemble, n, seed);
  if (cfg.truncate) entries = rescale_unit_variance(truncate_center(entries));
  return entries;
}

double log_scale(std::size_t n) { return std::sqrt(2.0 * std::log(static_cast<double>(n))); }

std::string path_in(const ExperimentConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

ojson config_echo(const ExperimentConfig& cfg) {
  ojson c = ojson::object();
  for (const auto& [k, v] : config_key_values(cfg)) c[k] = v;
  return c;
}

ojson header(const ExperimentConfig& cfg) {
  ojson doc;
  doc["version"] = version();
  doc["config"] = config_echo(cfg);
  return doc;
}

// Writes `doc` as `name` plus a manifest covering it.
std::string emit(const ExperimentConfig& cfg, const std::string& name, const ojson& doc) {
  const std::string text = doc.dump(2) + "\n";
  write_text_file(path_in(cfg, name), text);
  write_manifest(cfg, cfg.output_dir, {name});
  return text;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::size_t trial) {
  return derive_seed(master, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)});
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t trial) {
  TrialRecord rec;
  rec.n = n;
  rec.trial = trial;
  rec.seed = trial_seed(cfg.master_seed, n, trial);
  const auto start = std::chrono::steady_clock::now();
  const EntryArray entries = prepared_entries(cfg, n, rec.seed);
  const FourierDiagonal d = circle_adjusted_diagonal(entries);
  LanczosOptions lo;
  lo.tol = tol_or(cfg, "lanczos_tol", 1e-10);
  lo.max_iter = static_cast<int>(tol_or(cfg, "lanczos_max_iter", 4000));
  lo.seed = derive_seed(rec.seed, {1});
  try {
    const EigReport eig = top_eig_lanczos(pdp_operator(d), lo);
    rec.ratio = std::numbers::sqrt2 * eig.lambda_max / log_scale(n);
    rec.iters = eig.iterations;
    rec.residual = eig.residual;
  } catch (const ConvergenceError& e) {
    rec.ok = false;
    rec.error = e.what();
    rec.ratio = std::numbers::sqrt2 * e.best_estimate() / log_scale(n);
    rec.iters = e.iterations();
    rec.residual = e.residual();
  }
  if (cfg.record_timing) {
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

double dense_trial_ratio(const ExperimentConfig& cfg, std::size_t n, std::size_t trial) {
  const EntryArray entries = prepared_entries(cfg, n, trial_seed(cfg.master_seed, n, trial));
  const Eigen::MatrixXd t = materialize_toeplitz(circle_adjusted_toeplitz(entries)) / std::sqrt(static_cast<double>(n));
  const DenseSpectrum spec = dense_sym_eig(t, false);
  return spec.values[spec.values.size() - 1] / log_scale(n);
}

SimulateResult simulate(const ExperimentConfig& cfg) {
  SimulateResult res;
  for (std::size_t n : cfg.n_list)
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      TrialRecord rec;
      rec.n = n;
      rec.trial = t;
      res.trials.push_back(rec);
    }
  detail::parallel_for(res.trials.size(), cfg.worker_count(), [&](std::size_t i) {
    res.trials[i] = run_trial(cfg, res.trials[i].n, res.trials[i].trial);
  });
  for (std::size_t n : cfg.n_list) {
    SizeSummary s;
    s.n = n;
    std::vector<double> ratios;
    for (const auto& rec : res.trials) {
      if (rec.n != n) continue;
      if (rec.ok) {
        ratios.push_back(rec.ratio);
      } else {
        ++s.failures;
      }
    }
    s.count = ratios.size();
    if (!ratios.empty()) {
      const auto ms = detail::mean_stderr(ratios);
      s.mean = ms.mean;
      s.stderr_mean = ms.se;
      s.min = *std::min_element(ratios.begin(), ratios.end());
      s.max = *std::max_element(ratios.begin(), ratios.end());
    }
    res.summary.push_back(s);
  }
  return res;
}

std::string trials_csv(const std::vector<TrialRecord>& trials, bool with_timing) {
  std::string out = "n,trial,seed,ratio,iters,residual,ms\n";
  for (const auto& r : trials) {
    out += std::to_string(r.n) + ',' + std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',' +
           (r.ok ? detail::sig17(r.ratio) : std::string("nan")) + ',' + std::to_string(r.iters) + ',' +
           detail::sig17(r.residual) + ',' + detail::sig17(with_timing ? r.ms : 0.0) + '\n';
  }
  return out;
}

std::string summary_json(const ExperimentConfig& cfg, const std::vector<SizeSummary>& summary) {
  ojson doc = header(cfg);
  doc["theorem_constant"] = std::sqrt(kK1SquaredReference);
  ojson sizes = ojson::array();
  for (const auto& s : summary) {
    sizes.push_back({{"n", s.n},
                     {"count", s.count},
                     {"failures", s.failures},
                     {"mean", s.mean},
                     {"stderr", s.stderr_mean},
                     {"min", s.min},
                     {"max", s.max}});
  }
  doc["sizes"] = sizes;
  return doc.dump(2) + "\n";
}

SimulateResult run_simulate(const ExperimentConfig& cfg) {
  SimulateResult res = simulate(cfg);
  write_text_file(path_in(cfg, "trials.csv"), trials_csv(res.trials, cfg.record_timing));
  write_text_file(path_in(cfg, "summary.json"), summary_json(cfg, res.summary));
  write_manifest(cfg, cfg.output_dir, {"trials.csv", "summary.json"});
  return res;
}

std::string run_constant(const ExperimentConfig& cfg) {
  const auto N = static_cast<std::size_t>(tol_or(cfg, "constant_N", 4096));
  const auto k_max = static_cast<std::size_t>(tol_or(cfg, "constant_kmax", 512));
  const AutocorrResult k1 = maximize_K1(N);
  const auto curve = pi_k_curve(k_max);
  const SinCrossCheck sin = sin_crosscheck(k1.profile);

  ojson doc = header(cfg);
  doc["K1"] = k1.value;
  doc["K1_squared"] = k1.value * k1.value;
  doc["K1_squared_reference"] = kK1SquaredReference;
  doc["K1_iterations"] = k1.iterations;
  ojson grids = ojson::array();
  for (const auto& [n, v] : k1.grids) grids.push_back({{"N", n}, {"value", v}});
  doc["grids"] = grids;
  ojson pk = ojson::array();
  for (const auto& r : curve) {
    pk.push_back({{"k", r.k},
                  {"value", r.value},
                  {"sqrt2_value", std::numbers::sqrt2 * r.value},
                  {"iterations", r.iterations},
                  {"converged", r.converged}});
  }
  doc["pi_k_curve"] = pk;
  doc["sin_crosscheck"] = {{"value", sin.value},
                           {"L", sin.L},
                           {"dt", sin.dt},
                           {"boundary_mass", sin.boundary_mass},
                           {"boundary_warning", sin.boundary_warning},
                           {"gap_to_K1", sin.value - k1.value}};
  return emit(cfg, "constant.json", doc);
}

std::string run_blocks(const ExperimentConfig& cfg) {
  ojson doc = header(cfg);
  ojson sizes = ojson::array();
  for (std::size_t n : cfg.n_list) {
    const BrickLayout layout = build_bricks(n);
    const LayoutCheck lc = check_layout(layout);
    struct Row {
      std::uint64_t seed = 0;
      std::size_t s_count = 0;
      std::size_t visible = 0;
      AdmissibilityReport rep;
      double block_gap = std::numeric_limits<double>::quiet_NaN();
      std::string dump;
    };
    std::vector<Row> rows(cfg.trials);
    detail::parallel_for(cfg.trials, cfg.worker_count(), [&](std::size_t t) {
      Row& row = rows[t];
      row.seed = trial_seed(cfg.master_seed, n, t);
      const FourierDiagonal d = circle_adjusted_diagonal(prepared_entries(cfg, n, row.seed));
      const ThresholdSet s = threshold_set(d, cfg.epsilon);
      const PartitionLayout p = partition(layout, s);
      row.rep = check_admissibility(p);
      row.s_count = s.indices.size();
      row.visible = static_cast<std::size_t>(std::count(p.visible.begin(), p.visible.end(), true));
      if (2 * n <= kDenseEigCap) {
        const FourierDiagonal sparse = sparse_diag(d, s);
        const double full = top_eig_dense(materialize_pdp(sparse)).lambda_max;
        row.block_gap = std::abs(full - block_eig_max(d, p));
      }
      if (t == 0) row.dump = partition_json(p, row.rep);
    });
    std::size_t admissible = 0, c1 = 0, c2 = 0, vis = 0, gap = 0;
    ojson trials = ojson::array();
    for (std::size_t t = 0; t < rows.size(); ++t) {
      const Row& row = rows[t];
      admissible += row.rep.admissible();
      c1 += row.rep.condition1;
      c2 += row.rep.condition2;
      vis += row.rep.visibility_symmetric;
      gap += row.rep.gap_property;
      ojson tr = {{"trial", t},
                  {"seed", row.seed},
                  {"S_size", row.s_count},
                  {"visible_bricks", row.visible},
                  {"touching_parts", row.rep.touching_parts},
                  {"max_part_points", row.rep.max_part_points},
                  {"max_window_points", row.rep.max_window_points},
                  {"condition1", row.rep.condition1},
                  {"condition2", row.rep.condition2},
                  {"visibility_symmetric", row.rep.visibility_symmetric},
                  {"gap_property", row.rep.gap_property}};
      if (!std::isnan(row.block_gap)) tr["block_gap"] = row.block_gap;
      trials.push_back(tr);
    }
    const double count = static_cast<double>(std::max<std::size_t>(rows.size(), 1));
    ojson size = {{"n", n},
                  {"r", layout.r},
                  {"m", layout.m},
                  {"bricks", layout.bricks.size()},
                  {"M", admissible_multiplicity(cfg.epsilon)},
                  {"layout_ok", lc.ok()},
                  {"admissible_fraction", static_cast<double>(admissible) / count},
                  {"condition1_fraction", static_cast<double>(c1) / count},
                  {"condition2_fraction", static_cast<double>(c2) / count},
                  {"visibility_symmetric_fraction", static_cast<double>(vis) / count},
                  {"gap_property_fraction", static_cast<double>(gap) / count},
                  {"trials", trials}};
    if (!rows.empty()) size["first_partition"] = ojson::parse(rows.front().dump);
    sizes.push_back(size);
  }
  doc["sizes"] = sizes;
  return emit(cfg, "blocks.json", doc);
}

std::string run_invariance(const ExperimentConfig& cfg) {
  EntrySpec rademacher;
  rademacher.family = Family::rademacher;
  EntrySpec gaussian;
  gaussian.family = Family::gaussian;
  const unsigned threads = cfg.worker_count();
  const auto report_json = [](const SwapReport& r) {
    return ojson{{"lhs", r.lhs},
                 {"lhs_stderr", r.lhs_stderr},
                 {"bound", r.bound},
                 {"bound_stderr", r.bound_stderr},
                 {"trials", r.trials},
                 {"holds", r.holds()}};
  };

  ojson doc = header(cfg);
  {
    const SmoothMap f = linear_map(1, 4, {0.5, -0.5, 0.5, 0.5});
    const SmoothFunctional g = quadratic_functional(1, {1.0}, {0.3}, 0.0);
    doc["trivial"] = report_json(swap_experiment(rademacher, gaussian, f, g, cfg.trials,
                                                 derive_seed(cfg.master_seed, {1}), threads));
  }
  {
    const SmoothMap f = identity_map(1);
    const SmoothFunctional g = cos_functional();
    ojson c = report_json(swap_experiment(rademacher, gaussian, f, g, cfg.trials,
                                          derive_seed(cfg.master_seed, {2}), threads));
    const ExactSwap exact = swap_exact_r1(rademacher, gaussian, f, g);
    c["exact_lhs"] = exact.lhs;
    c["exact_bound"] = exact.bound;
    doc["cosine"] = c;
  }
  ojson moderate = ojson::array();
  const auto configs = moderate_deviation_configs();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& mc = configs[i];
    const SwapReport r = swap_experiment(rademacher, gaussian, moderate_statistic(mc.n),
                                         gaussian_bump(mc.height, mc.width), cfg.trials,
                                         derive_seed(cfg.master_seed, {3, i}), threads);
    ojson row = report_json(r);
    row["n"] = mc.n;
    row["u"] = mc.u;
    row["height"] = mc.height;
    moderate.push_back(row);
  }
  doc["moderate"] = moderate;
  return emit(cfg, "invariance.json", doc);
}

double inverse_participation_ratio(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x * x * x;
  return s;
}

std::size_t support_size(const std::vector<double>& v, double mass_fraction) {
  std::vector<double> sq(v.size());
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    sq[i] = v[i] * v[i];
    total += sq[i];
  }
  std::sort(sq.begin(), sq.end(), std::greater<>());
  double acc = 0.0;
  for (std::size_t i = 0; i < sq.size(); ++i) {
    acc += sq[i];
    if (acc >= mass_fraction * total) return i + 1;
  }
  return sq.size();
}

std::string run_eigvec(const ExperimentConfig& cfg) {
  for (std::size_t n : cfg.n_list) {
    if (n > kDenseCap) throw std::invalid_argument("eigvec: n must be at most 1024 for dense solves");
  }
  ojson doc = header(cfg);
  ojson results = ojson::array();
  for (std::size_t n : cfg.n_list) {
    std::vector<double> ipr(cfg.trials), support(cfg.trials);
    detail::parallel_for(cfg.trials, cfg.worker_count(), [&](std::size_t t) {
      const EntryArray entries = prepared_entries(cfg, n, trial_seed(cfg.master_seed, n, t));
      const Eigen::MatrixXd tm = materialize_toeplitz(circle_adjusted_toeplitz(entries));
      const DenseSpectrum spec = dense_sym_eig(tm, true);
      const Eigen::Index top = spec.values.size() - 1;
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = std::abs(spec.vectors(static_cast<Eigen::Index>(i), top));
      ipr[t] = inverse_participation_ratio(v);
      support[t] = static_cast<double>(support_size(v, 0.9));
    });
    const auto mi = detail::mean_stderr(ipr);
    const auto ms = detail::mean_stderr(support);
    results.push_back({{"n", n},
                       {"ipr", mi.mean},
                       {"ipr_stderr", mi.se},
                       {"support_size_90pct", ms.mean},
                       {"n_times_ipr", mi.mean * static_cast<double>(n)},
                       {"per_trial_ipr", ipr}});
  }
  doc["results"] = results;
  return emit(cfg, "eigvec.json", doc);
}

}  // namespace toeplab
