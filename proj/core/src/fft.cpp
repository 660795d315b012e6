// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "toeplab/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace toeplab {

FftPlan::FftPlan(std::size_t size) : size_(size) {
  if (!is_power_of_two(size)) {
    throw std::invalid_argument("FftPlan: size " + std::to_string(size) +
                                " is not a power of two");
  }
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < size) ++bits;

  bitrev_.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    }
    bitrev_[i] = r;
  }

  // Twiddles are evaluated directly rather than by recurrence so that the
  // rounding error does not accumulate with the transform length.
  twiddles_.resize(size / 2);
  const double step = -2.0 * std::numbers::pi / static_cast<double>(size);
  for (std::size_t k = 0; k < size / 2; ++k) {
    const double angle = step * static_cast<double>(k);
    twiddles_[k] = {std::cos(angle), std::sin(angle)};
  }
}

void FftPlan::transform(std::span<cplx> data, FftSign sign) const {
  if (data.size() != size_) {
    throw std::invalid_argument("FftPlan: length mismatch");
  }
  for (std::size_t i = 0; i < size_; ++i) {
    const std::size_t j = bitrev_[i];
    if (j > i) std::swap(data[i], data[j]);
  }
  const bool conjugate = sign == FftSign::positive;
  for (std::size_t len = 2; len <= size_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = size_ / len;
    for (std::size_t start = 0; start < size_; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        cplx w = twiddles_[k * stride];
        if (conjugate) w = std::conj(w);
        const cplx u = data[start + k];
        const cplx t = w * data[start + k + half];
        data[start + k] = u + t;
        data[start + k + half] = u - t;
      }
    }
  }
}

const FftPlan& fft_plan(std::size_t size) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[size];
  if (!slot) slot = std::make_unique<FftPlan>(size);
  return *slot;
}

std::vector<cplx> dft_direct(std::span<const cplx> data, FftSign sign) {
  const std::size_t n = data.size();
  std::vector<cplx> out(n);
  const double s = static_cast<double>(static_cast<int>(sign));
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      // Reduce j*k mod n first so the angle stays small and exact.
      const std::size_t jk = (j * k) % n;
      const double angle =
          s * 2.0 * std::numbers::pi * static_cast<double>(jk) / static_cast<double>(n);
      acc += data[k] * cplx{std::cos(angle), std::sin(angle)};
    }
    out[j] = acc;
  }
  return out;
}

void dft(std::span<cplx> data, FftSign sign) {
  if (data.empty()) return;
  if (is_power_of_two(data.size())) {
    fft_plan(data.size()).transform(data, sign);
    return;
  }
  const auto out = dft_direct(data, sign);
  std::copy(out.begin(), out.end(), data.begin());
}

}  // namespace toeplab
