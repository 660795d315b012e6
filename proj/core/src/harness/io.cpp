// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "toeplab/harness/io.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "json.hpp"

#ifndef TOEPLAB_VERSION
#define TOEPLAB_VERSION "unknown"
#endif

namespace toeplab {

const char* version() { return TOEPLAB_VERSION; }

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_text_file(path)); }

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string manifest_json(const ExperimentConfig& cfg, const std::string& dir,
                          const std::vector<std::string>& artifacts) {
  nlohmann::ordered_json doc;
  doc["tool"] = "toeplab";
  doc["version"] = version();
  doc["config"] = config_key_values(cfg);
  nlohmann::ordered_json hashes = nlohmann::ordered_json::object();
  for (const auto& name : artifacts) {
    hashes[name] = sha256_file((std::filesystem::path(dir) / name).string());
  }
  doc["artifacts"] = hashes;
  return doc.dump(2) + "\n";
}

void write_manifest(const ExperimentConfig& cfg, const std::string& dir,
                    const std::vector<std::string>& artifacts) {
  write_text_file((std::filesystem::path(dir) / "manifest.json").string(), manifest_json(cfg, dir, artifacts));
}

}  // namespace toeplab
