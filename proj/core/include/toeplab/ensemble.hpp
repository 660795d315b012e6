// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace toeplab {

class CounterRng;

enum class Family { gaussian, rademacher, uniform, student_t, table };

struct TableAtom {
  double value = 0.0;
  double probability = 0.0;

  friend bool operator==(const TableAtom&, const TableAtom&) = default;
};

/// Law of one entry of the triangular array.
///
/// `uniform` is uniform on [-sqrt 3, sqrt 3]; `student_t` is Student's t with
/// `df` degrees of freedom rescaled to unit variance. `gamma` is the moment
/// exponent and `moment_bound` the constant C with E|a|^gamma <= C.
struct EntrySpec {
  Family family = Family::gaussian;
  double df = 0.0;
  std::vector<TableAtom> table;
  double gamma = 3.0;
  double moment_bound = 100.0;

  friend bool operator==(const EntrySpec&, const EntrySpec&) = default;
};

std::string family_name(Family family);
Family parse_family(const std::string& name);

struct PopulationMoments {
  double mean = 0.0;
  double variance = 0.0;
  double abs_moment = 0.0;  // E|a|^gamma
};

/// Analytic (or quadrature, for student_t) moments of the raw law.
PopulationMoments population_moments(const EntrySpec& spec);

/// Throws std::invalid_argument naming the violated condition when the law is
/// not mean 0 / variance 1, gamma <= 2, or E|a|^gamma exceeds the bound.
void validate(const EntrySpec& spec);

/// n^{1/gamma}.
double truncation_level(std::size_t n, double gamma);

/// E[a 1{|a| <= level}] and E[a^2 1{|a| <= level}] of the raw law. Student t
/// uses adaptive Gauss-Kronrod quadrature and throws std::runtime_error if the
/// error estimate exceeds 1e-12.
double truncated_mean(const EntrySpec& spec, double level);
double truncated_second_moment(const EntrySpec& spec, double level);

/// Population mean and variance of a 1{|a|<=L} - E[a 1{|a|<=L}].
PopulationMoments truncated_centered_moments(const EntrySpec& spec, double level);

/// One draw from the law.
double sample_one(const EntrySpec& spec, CounterRng& rng);

enum class Transform { raw, truncated, rescaled };

std::string transform_name(Transform t);

/// One row a_0 ... a_{n-1} of the array plus the auxiliary copy a_n.
struct EntryArray {
  std::size_t n = 0;
  std::vector<double> values;  // length n + 1
  EntrySpec spec;
  std::uint64_t seed = 0;
  Transform transform = Transform::raw;
};

/// n + 1 independent draws. Entry i uses its own stream
/// derive_seed(seed, {i}), so a longer row extends a shorter one with the
/// same seed without changing its prefix.
EntryArray sample_entries(const EntrySpec& spec, std::size_t n, std::uint64_t seed);

/// a -> a 1{|a| <= n^{1/gamma}} - E[a 1{|a| <= n^{1/gamma}}] using the
/// population truncated mean.
EntryArray truncate_center(const EntryArray& entries);

/// Divides by the population standard deviation of the truncated-centered law.
/// Throws std::domain_error if that variance is zero.
EntryArray rescale_unit_variance(const EntryArray& entries);

/// Population mean/variance of the law after both transforms. Used to check
/// the transforms restore mean 0 / variance 1.
PopulationMoments rescaled_moments(const EntrySpec& spec, std::size_t n);

/// Flat key/value form: family, df, table ("v:p,v:p,..."), gamma, moment_bound.
std::map<std::string, std::string> to_key_values(const EntrySpec& spec);
EntrySpec spec_from_key_values(const std::map<std::string, std::string>& kv);

}  // namespace toeplab
