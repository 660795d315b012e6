// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace toeplab {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Derives an independent stream seed from a master seed and a path of stream
/// identifiers (e.g. {n, trial} or {entry index}).
///
///   state <- mix64(master + G)
///   for k, id in enumerate(path): state <- mix64(rotl(state, 23) ^ mix64(id + (k+1) G))
///
/// The rotation keeps derive_seed(m, {m}) from cancelling to mix64(0) = 0.
///
/// Every step is a bijection of `state` for fixed preceding ids, so two paths of
/// equal length that differ only in their last id never collide. Pure integer
/// arithmetic; identical on every platform.
std::uint64_t derive_seed(std::uint64_t master, std::span<const std::uint64_t> path) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

/// SplitMix64 sequence generator. Small, stateless apart from its counter,
/// and cheap to construct per index.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform_open() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via the Box-Muller cosine branch (two uniforms per draw).
  double normal() noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace toeplab
