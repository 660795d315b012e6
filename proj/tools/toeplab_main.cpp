// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toeplab/harness/config.hpp"
#include "toeplab/harness/experiments.hpp"
#include "toeplab/harness/io.hpp"
#include "toeplab/harness/verify.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> keys;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config_path, "key = value config file");
  sub->add_option_function<std::string>("--seed", [&](const std::string& v) { o.keys["seed"] = v; }, "master seed");
  sub->add_option_function<std::string>("--n", [&](const std::string& v) { o.keys["n"] = v; },
                                        "comma-separated powers of two");
  sub->add_option_function<std::string>("--trials", [&](const std::string& v) { o.keys["trials"] = v; },
                                        "trials per n");
  sub->add_option_function<std::string>("--epsilon", [&](const std::string& v) { o.keys["epsilon"] = v; },
                                        "threshold level");
  sub->add_option_function<std::string>("--out", [&](const std::string& v) { o.keys["out"] = v; },
                                        "output directory");
  sub->add_option_function<std::string>("--threads", [&](const std::string& v) { o.keys["threads"] = v; },
                                        "worker threads (0 = all cores)");
  sub->add_option_function<std::string>("--family", [&](const std::string& v) { o.keys["family"] = v; },
                                        "gaussian|rademacher|uniform|student_t|table");
  sub->add_option("--set", o.sets, "extra key=value settings (repeatable)");
}

toeplab::ExperimentConfig build_config(toeplab::Subcommand s, const Overrides& o) {
  toeplab::ExperimentConfig cfg;
  if (!o.config_path.empty()) cfg = toeplab::load_config(o.config_path, cfg);
  cfg.subcommand = s;
  // Family first so df/table overrides apply on top of it.
  if (auto it = o.keys.find("family"); it != o.keys.end()) toeplab::apply_key(cfg, "family", it->second);
  for (const auto& [k, v] : o.keys) {
    if (k != "family") toeplab::apply_key(cfg, k, v);
  }
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    toeplab::apply_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

int run(toeplab::Subcommand s, const toeplab::ExperimentConfig& cfg) {
  using toeplab::Subcommand;
  switch (s) {
    case Subcommand::simulate: {
      const auto res = toeplab::run_simulate(cfg);
      std::printf("%8s %6s %8s %12s %12s %10s %10s\n", "n", "count", "failed", "mean", "stderr", "min", "max");
      for (const auto& row : res.summary) {
        std::printf("%8zu %6zu %8zu %12.6f %12.6f %10.5f %10.5f\n", row.n, row.count, row.failures, row.mean,
                    row.stderr_mean, row.min, row.max);
      }
      return 0;
    }
    case Subcommand::constant: std::cout << toeplab::run_constant(cfg); return 0;
    case Subcommand::blocks: std::cout << toeplab::run_blocks(cfg); return 0;
    case Subcommand::invariance: std::cout << toeplab::run_invariance(cfg); return 0;
    case Subcommand::eigvec: std::cout << toeplab::run_eigvec(cfg); return 0;
    case Subcommand::verify: {
      int failed = 0;
      toeplab::run_verify(cfg, [&](const toeplab::CriterionResult& r) {
        std::cout << toeplab::format_result(r) << std::endl;
        failed += !r.pass;
      });
      return failed == 0 ? 0 : 1;
    }
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extreme eigenvalues of random symmetric Toeplitz matrices"};
  app.set_version_flag("--version", std::string(toeplab::version()));
  app.require_subcommand(1);

  std::map<toeplab::Subcommand, Overrides> overrides;
  std::map<toeplab::Subcommand, CLI::App*> subs;
  const std::map<toeplab::Subcommand, std::string> help{
      {toeplab::Subcommand::simulate, "Monte-Carlo study of the top-eigenvalue ratio"},
      {toeplab::Subcommand::constant, "autocorrelation constant, Pi_k curve and sine-kernel check"},
      {toeplab::Subcommand::blocks, "brick layout, random partition and admissibility statistics"},
      {toeplab::Subcommand::invariance, "swap inequality experiments"},
      {toeplab::Subcommand::verify, "run the acceptance criteria"},
      {toeplab::Subcommand::eigvec, "localization of the top eigenvector (dense, n <= 1024)"}};
  for (const auto& [s, text] : help) {
    CLI::App* sub = app.add_subcommand(toeplab::subcommand_name(s), text);
    add_common(sub, overrides[s]);
    subs[s] = sub;
  }
  subs[toeplab::Subcommand::verify]->add_option_function<std::string>(
      "--criteria", [&](const std::string& v) { overrides[toeplab::Subcommand::verify].keys["criteria"] = v; },
      "comma-separated criterion ids or 'all'");

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [s, sub] : subs) {
      if (sub->parsed()) return run(s, build_config(s, overrides[s]));
    }
  } catch (const std::exception& e) {
    std::cerr << "toeplab: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
