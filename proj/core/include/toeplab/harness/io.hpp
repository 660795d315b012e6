// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "toeplab/harness/config.hpp"

namespace toeplab {

const char* version();

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

std::string read_text_file(const std::string& path);
/// Creates parent directories as needed.
void write_text_file(const std::string& path, const std::string& content);

/// manifest.json: config echo, version and the SHA-256 of every listed
/// artifact (file names relative to `dir`).
std::string manifest_json(const ExperimentConfig& cfg, const std::string& dir,
                          const std::vector<std::string>& artifacts);
void write_manifest(const ExperimentConfig& cfg, const std::string& dir,
                    const std::vector<std::string>& artifacts);

}  // namespace toeplab
