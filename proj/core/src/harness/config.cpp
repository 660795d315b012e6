// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "toeplab/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "../numeric_format.hpp"
#include "toeplab/fft.hpp"

namespace toeplab {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  const std::string t = trim(s);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw std::invalid_argument("not an unsigned integer: '" + s + "'");
  }
  return v;
}

bool parse_bool(const std::string& s) {
  const std::string t = trim(s);
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw std::invalid_argument("not a boolean: '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::string subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::simulate: return "simulate";
    case Subcommand::constant: return "constant";
    case Subcommand::blocks: return "blocks";
    case Subcommand::invariance: return "invariance";
    case Subcommand::verify: return "verify";
    case Subcommand::eigvec: return "eigvec";
  }
  return "?";
}

Subcommand parse_subcommand(const std::string& name) {
  for (auto s : {Subcommand::simulate, Subcommand::constant, Subcommand::blocks, Subcommand::invariance,
                 Subcommand::verify, Subcommand::eigvec}) {
    if (subcommand_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown subcommand '" + name + "'");
}

double ExperimentConfig::tolerance(const std::string& key) const {
  const auto it = tolerances.find(key);
  if (it == tolerances.end()) throw std::out_of_range("no tolerance named '" + key + "'");
  return it->second;
}

unsigned ExperimentConfig::worker_count() const {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text, ',')) {
    const auto n = static_cast<std::size_t>(parse_u64(item));
    if (n < 4 || !is_power_of_two(n)) {
      throw std::invalid_argument("n must be a power of two >= 4, got " + item);
    }
    out.push_back(n);
  }
  if (out.empty()) throw std::invalid_argument("empty n list");
  return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "subcommand") {
    cfg.subcommand = parse_subcommand(value);
  } else if (key == "family" || key == "df" || key == "table" || key == "gamma" || key == "moment_bound") {
    auto kv = to_key_values(cfg.ensemble);
    if (key == "family") {
      // A new family starts from that family's defaults.
      kv = {{"family", value}, {"gamma", kv["gamma"]}, {"moment_bound", kv["moment_bound"]}};
    } else {
      kv[key] = value;
    }
    cfg.ensemble = spec_from_key_values(kv);
  } else if (key == "n") {
    cfg.n_list = parse_n_list(value);
  } else if (key == "trials") {
    cfg.trials = static_cast<std::size_t>(parse_u64(value));
    if (cfg.trials == 0) throw std::invalid_argument("trials must be positive");
  } else if (key == "epsilon") {
    cfg.epsilon = detail::parse_double(value);
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  } else if (key == "seed") {
    cfg.master_seed = parse_u64(value);
  } else if (key == "out") {
    cfg.output_dir = value;
  } else if (key == "threads") {
    cfg.threads = static_cast<unsigned>(parse_u64(value));
  } else if (key == "truncate") {
    cfg.truncate = parse_bool(value);
  } else if (key == "record_timing") {
    cfg.record_timing = parse_bool(value);
  } else if (key == "criteria") {
    cfg.criteria.clear();
    if (value != "all") {
      for (const auto& item : split(value, ',')) cfg.criteria.push_back(static_cast<int>(parse_u64(item)));
    }
  } else if (key == "cov_perturbation") {
    cfg.cov_perturbation = detail::parse_double(value);
  } else if (key.rfind("tol.", 0) == 0 && key.size() > 4) {
    cfg.tolerances[key.substr(4)] = detail::parse_double(value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    try {
      apply_key(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const std::exception& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

std::map<std::string, std::string> config_key_values(const ExperimentConfig& cfg) {
  std::map<std::string, std::string> kv = to_key_values(cfg.ensemble);
  kv["subcommand"] = subcommand_name(cfg.subcommand);
  std::string ns;
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) ns += (i ? "," : "") + std::to_string(cfg.n_list[i]);
  kv["n"] = ns;
  kv["trials"] = std::to_string(cfg.trials);
  kv["epsilon"] = detail::shortest(cfg.epsilon);
  kv["seed"] = std::to_string(cfg.master_seed);
  kv["out"] = cfg.output_dir;
  kv["threads"] = std::to_string(cfg.threads);
  kv["truncate"] = cfg.truncate ? "true" : "false";
  kv["record_timing"] = cfg.record_timing ? "true" : "false";
  std::string crit = cfg.criteria.empty() ? "all" : "";
  for (std::size_t i = 0; i < cfg.criteria.size(); ++i) crit += (i ? "," : "") + std::to_string(cfg.criteria[i]);
  kv["criteria"] = crit;
  kv["cov_perturbation"] = detail::shortest(cfg.cov_perturbation);
  for (const auto& [name, v] : cfg.tolerances) kv["tol." + name] = detail::shortest(v);
  return kv;
}

std::string to_config_text(const ExperimentConfig& cfg) {
  // family first: setting it resets df and table.
  auto kv = config_key_values(cfg);
  std::string out = "family = " + kv.at("family") + "\n";
  kv.erase("family");
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

}  // namespace toeplab
