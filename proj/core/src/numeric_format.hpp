// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <system_error>

namespace toeplab::detail {

// Shortest decimal form that parses back to the same double.
inline std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc{}) throw std::runtime_error("to_chars failed");
  return std::string(buf, res.ptr);
}

// Fixed 17 significant digits, the CSV contract.
inline std::string sig17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && *first == ' ') ++first;
  if (first < last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

}  // namespace toeplab::detail
