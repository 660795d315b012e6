// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "toeplab/seeding.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace toeplab {

std::uint64_t derive_seed(std::uint64_t master, std::span<const std::uint64_t> path) noexcept {
  std::uint64_t state = mix64(master + kGoldenGamma);
  std::uint64_t k = 1;
  for (const std::uint64_t id : path) {
    state = mix64(std::rotl(state, 23) ^ mix64(id + k * kGoldenGamma));
    ++k;
  }
  return state;
}

std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> path) noexcept {
  return derive_seed(master, std::span<const std::uint64_t>(path.begin(), path.size()));
}

double CounterRng::normal() noexcept {
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace toeplab
