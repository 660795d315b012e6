// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

// Runs one acceptance criterion and prints a single PASS/FAIL line. Exit
// status 0 on pass, 1 on fail.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "toeplab/harness/config.hpp"
#include "toeplab/harness/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"toeplab acceptance criterion"};
  int criterion = 0;
  std::string out = "acceptance_out";
  unsigned threads = 0;
  app.add_option("--criterion", criterion, "criterion id")->required()->check(CLI::Range(1, toeplab::kCriterionCount));
  app.add_option("--out", out, "scratch directory");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  CLI11_PARSE(app, argc, argv);

  toeplab::ExperimentConfig cfg;
  cfg.subcommand = toeplab::Subcommand::verify;
  cfg.output_dir = out;
  cfg.threads = threads;
  const toeplab::CriterionResult r = toeplab::run_criterion(criterion, cfg);
  std::cout << toeplab::format_result(r) << std::endl;
  return r.pass ? 0 : 1;
}
