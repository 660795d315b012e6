// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "toeplab/ensemble.hpp"

namespace toeplab {

enum class Subcommand { simulate, constant, blocks, invariance, verify, eigvec };

std::string subcommand_name(Subcommand s);
Subcommand parse_subcommand(const std::string& name);

/// Everything needed to reproduce a run. Written into every manifest.
struct ExperimentConfig {
  Subcommand subcommand = Subcommand::simulate;
  EntrySpec ensemble;
  std::vector<std::size_t> n_list{128, 512};
  std::size_t trials = 20;
  double epsilon = 0.5;
  std::uint64_t master_seed = 20260101;
  std::string output_dir = "toeplab_out";
  std::map<std::string, double> tolerances{{"lanczos_tol", 1e-10}, {"lanczos_max_iter", 4000}};
  unsigned threads = 0;        // 0: hardware concurrency
  bool truncate = false;       // apply truncation/centering/rescaling to the entries
  bool record_timing = false;  // wall time in trials.csv; off keeps outputs byte-stable
  std::vector<int> criteria;   // verify: empty means all
  double cov_perturbation = 0.0;  // verify fault injection

  double tolerance(const std::string& key) const;
  unsigned worker_count() const;
};

/// Comma-separated list of powers of two >= 4.
std::vector<std::size_t> parse_n_list(const std::string& text);

/// Sets one key. Keys: subcommand, family, df, table, gamma, moment_bound,
/// n, trials, epsilon, seed, out, threads, truncate, record_timing, criteria,
/// cov_perturbation, and tol.<name> for tolerances. Unknown keys throw
/// std::invalid_argument.
void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Flat "key = value" lines; '#' starts a comment.
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

/// Canonical key/value form (sorted keys) used for echoes and hashing.
std::map<std::string, std::string> config_key_values(const ExperimentConfig& cfg);
std::string to_config_text(const ExperimentConfig& cfg);

}  // namespace toeplab
