// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "toeplab/harness/config.hpp"

namespace toeplab {

struct TrialRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double ratio = 0.0;  // lambda_1(n^{-1/2} T) / sqrt(2 ln n) = sqrt(2) lambda_1(PDP) / sqrt(2 ln n)
  int iters = 0;
  double residual = 0.0;
  double ms = 0.0;
  bool ok = true;
  std::string error;
};

/// Seed of trial `trial` at size n: derive_seed(master, {n, trial}).
std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::size_t trial);

/// One Monte-Carlo trial: sample, (optionally) truncate and rescale,
/// circle-adjusted Fourier diagonal, Lanczos on P D P.
TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t trial);

/// The same ratio from a dense eigensolve of n^{-1/2} T (n <= 1024).
double dense_trial_ratio(const ExperimentConfig& cfg, std::size_t n, std::size_t trial);

struct SizeSummary {
  std::size_t n = 0;
  std::size_t count = 0;
  std::size_t failures = 0;
  double mean = 0.0;
  double stderr_mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct SimulateResult {
  std::vector<TrialRecord> trials;
  std::vector<SizeSummary> summary;
};

/// All trials for every n, in (n, trial) order, computed on the worker pool.
SimulateResult simulate(const ExperimentConfig& cfg);

std::string trials_csv(const std::vector<TrialRecord>& trials, bool with_timing);
std::string summary_json(const ExperimentConfig& cfg, const std::vector<SizeSummary>& summary);

/// Each run_* writes its artifacts plus manifest.json into cfg.output_dir
/// and returns the main JSON document.
SimulateResult run_simulate(const ExperimentConfig& cfg);
std::string run_constant(const ExperimentConfig& cfg);
std::string run_blocks(const ExperimentConfig& cfg);
std::string run_invariance(const ExperimentConfig& cfg);
std::string run_eigvec(const ExperimentConfig& cfg);

/// Localization diagnostics of a unit vector.
double inverse_participation_ratio(const std::vector<double>& v);
std::size_t support_size(const std::vector<double>& v, double mass_fraction);

}  // namespace toeplab
