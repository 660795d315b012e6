// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace toeplab {

using cplx = std::complex<double>;

/// Sign of the exponent in sum_k x_k exp(sign * 2 pi i j k / N).
enum class FftSign : int { negative = -1, positive = +1 };

constexpr bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

constexpr std::size_t next_power_of_two(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// In-place iterative radix-2 transform of a fixed power-of-two length.
///
/// Transforms are unnormalized: applying `negative` then `positive` multiplies
/// the input by `size()`. Plans are immutable after construction and may be
/// shared between threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t size);

  std::size_t size() const noexcept { return size_; }

  void transform(std::span<cplx> data, FftSign sign) const;
  void forward(std::span<cplx> data) const { transform(data, FftSign::negative); }
  void inverse(std::span<cplx> data) const { transform(data, FftSign::positive); }

 private:
  std::size_t size_;
  std::vector<std::size_t> bitrev_;
  std::vector<cplx> twiddles_;  // exp(-2 pi i k / size), k < size / 2
};

/// Process-wide plan cache keyed by size. Thread-safe; returned references stay
/// valid for the life of the program.
const FftPlan& fft_plan(std::size_t size);

/// O(N^2) reference transform used for non power-of-two sizes.
std::vector<cplx> dft_direct(std::span<const cplx> data, FftSign sign);

/// Unnormalized DFT of arbitrary length: radix-2 when the length is a power of
/// two, direct summation otherwise.
void dft(std::span<cplx> data, FftSign sign);

}  // namespace toeplab
