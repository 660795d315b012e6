// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "toeplab/harness/config.hpp"

namespace toeplab {

inline constexpr int kCriterionCount = 12;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string measured;  // the numbers the verdict rests on
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

std::string criterion_title(int id);

/// Runs one acceptance criterion with its pinned tolerances. `cfg` supplies
/// the worker count and the fault-injection knob; sizes, trial counts and seeds
/// are fixed per criterion.
CriterionResult run_criterion(int id, const ExperimentConfig& cfg);

/// One line: "criterion <id> PASS|FAIL <title>: <measured> (<seconds>s)".
std::string format_result(const CriterionResult& r);

/// Runs cfg.criteria (all when empty), writes verify.json and manifest.json
/// into cfg.output_dir, returns the results. `on_result` sees each result as
/// soon as it is known.
std::vector<CriterionResult> run_verify(const ExperimentConfig& cfg,
                                        const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace toeplab
