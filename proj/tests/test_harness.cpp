// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "toeplab/harness/config.hpp"
#include "toeplab/harness/experiments.hpp"
#include "toeplab/harness/io.hpp"
#include "toeplab/harness/verify.hpp"

using namespace toeplab;

namespace {

std::string scratch_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("toeplab_test_" + name);
  std::filesystem::remove_all(p);
  return p.string();
}

}  // namespace

TEST_CASE("config text parses, echoes and round trips") {
  const ExperimentConfig cfg = parse_config_text(
      "# study\nsubcommand = blocks\nfamily = student_t\ndf = 5\nn = 64, 256\ntrials = 7\n"
      "epsilon = 0.25\nseed = 99\nout = somewhere\ntruncate = true\ntol.lanczos_tol = 1e-9\n");
  CHECK(cfg.subcommand == Subcommand::blocks);
  CHECK(cfg.ensemble.family == Family::student_t);
  CHECK(cfg.ensemble.df == 5.0);
  CHECK(cfg.n_list == std::vector<std::size_t>{64, 256});
  CHECK(cfg.trials == 7);
  CHECK(cfg.epsilon == 0.25);
  CHECK(cfg.master_seed == 99);
  CHECK(cfg.truncate);
  CHECK(cfg.tolerance("lanczos_tol") == 1e-9);
  const ExperimentConfig again = parse_config_text(to_config_text(cfg));
  CHECK(config_key_values(again) == config_key_values(cfg));
}

TEST_CASE("config errors name the line") {
  CHECK_THROWS_WITH_AS(parse_config_text("trials = 3\nbogus = 1\n"), doctest::Contains("line 2"),
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("n = 100\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("trials = 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("no equals sign\n"), std::invalid_argument);
}

TEST_CASE("sha256 test vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("a trial is reproducible from its seed and matches the dense solver") {
  ExperimentConfig cfg;
  for (std::size_t n : {16, 64, 128}) {
    for (std::size_t t = 0; t < 3; ++t) {
      const TrialRecord a = run_trial(cfg, n, t);
      const TrialRecord b = run_trial(cfg, n, t);
      CHECK(a.ok);
      CHECK(a.ratio == b.ratio);
      CHECK(a.seed == trial_seed(cfg.master_seed, n, t));
      CHECK(a.ratio == doctest::Approx(dense_trial_ratio(cfg, n, t)).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("worker count does not change any output byte") {
  ExperimentConfig one;
  one.n_list = {32, 128};
  one.trials = 6;
  one.threads = 1;
  ExperimentConfig many = one;
  many.threads = 3;
  const auto a = simulate(one);
  const auto b = simulate(many);
  CHECK(trials_csv(a.trials, false) == trials_csv(b.trials, false));
  CHECK(summary_json(one, a.summary) == summary_json(one, b.summary));
}

TEST_CASE("simulate writes the documented artifacts") {
  ExperimentConfig cfg;
  cfg.n_list = {32};
  cfg.trials = 3;
  cfg.output_dir = scratch_dir("simulate");
  run_simulate(cfg);
  const std::string csv = read_text_file(cfg.output_dir + "/trials.csv");
  CHECK(csv.rfind("n,trial,seed,ratio,iters,residual,ms\n", 0) == 0);
  const auto manifest = nlohmann::json::parse(read_text_file(cfg.output_dir + "/manifest.json"));
  CHECK(manifest["artifacts"]["trials.csv"] == sha256_hex(csv));
  CHECK(manifest["config"]["trials"] == "3");
  const auto summary = nlohmann::json::parse(read_text_file(cfg.output_dir + "/summary.json"));
  CHECK(summary["sizes"][0]["count"] == 3);
  CHECK(summary["config"]["n"] == "32");
}

TEST_CASE("heavy-tailed entries run with and without truncation") {
  ExperimentConfig cfg;
  cfg.ensemble.family = Family::student_t;
  cfg.ensemble.df = 5.0;
  for (bool truncate : {false, true}) {
    cfg.truncate = truncate;
    const TrialRecord r = run_trial(cfg, 1024, 0);
    CHECK(r.ok);
    CHECK(std::isfinite(r.ratio));
  }
}

TEST_CASE("eigvec output schema and rerun determinism") {
  ExperimentConfig cfg;
  cfg.n_list = {16, 64};
  cfg.trials = 3;
  cfg.output_dir = scratch_dir("eigvec");
  const std::string first = run_eigvec(cfg);
  CHECK(first == run_eigvec(cfg));
  const auto doc = nlohmann::json::parse(first);
  for (const auto& row : doc["results"]) {
    CHECK(row.contains("n"));
    CHECK(row.contains("ipr"));
    CHECK(row.contains("support_size_90pct"));
  }
  cfg.n_list = {2048};
  CHECK_THROWS_AS(run_eigvec(cfg), std::invalid_argument);
}

TEST_CASE("localization diagnostics") {
  const std::vector<double> flat(16, 0.25);
  CHECK(inverse_participation_ratio(flat) == doctest::Approx(1.0 / 16.0));
  CHECK(support_size(flat, 0.9) == 15);
  std::vector<double> spike(16, 0.0);
  spike[3] = 1.0;
  CHECK(inverse_participation_ratio(spike) == 1.0);
  CHECK(support_size(spike, 0.9) == 1);
}

TEST_CASE("perturbing the covariance model makes verification fail") {
  ExperimentConfig cfg;
  cfg.cov_perturbation = 1e-3;
  const CriterionResult r = run_criterion(6, cfg);
  CHECK_FALSE(r.pass);
  cfg.cov_perturbation = 0.0;
  CHECK(run_criterion(6, cfg).pass);
}

TEST_CASE("result lines have a fixed shape") {
  CriterionResult r;
  r.id = 5;
  r.title = criterion_title(5);
  r.pass = true;
  r.measured = "x";
  r.seconds = 1.25;
  CHECK(format_result(r) == "criterion 5 PASS b_n independence: x (1.2s)");
  CHECK_THROWS_AS(criterion_title(13), std::out_of_range);
}
