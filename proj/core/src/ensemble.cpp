// Copyright 2026 The toeplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "toeplab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "numeric_format.hpp"
#include "toeplab/seeding.hpp"

namespace toeplab {
namespace {

constexpr double kMomentTol = 1e-12;
constexpr double kQuadratureTol = 1e-12;
const double kSqrt3 = std::sqrt(3.0);

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Scale turning Student t(df) into a unit-variance law.
double student_scale(double df) { return std::sqrt((df - 2.0) / df); }

// Integral of |a|^power * density over [-level, level] for the unit-variance t.
double student_truncated_abs_moment(double df, double level, double power) {
  const double s = student_scale(df);
  const boost::math::students_t_distribution<double> dist(df);
  const double t_level = level / s;
  auto integrand = [&](double t) { return std::pow(std::abs(t), power) * boost::math::pdf(dist, t); };
  double error = 0.0;
  // Symmetric integrand: integrate [0, t_level] and double.
  const double half = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, t_level, 15, 1e-14, &error);
  if (error > kQuadratureTol) {
    throw std::runtime_error("student_t truncated moment: quadrature error " +
                             detail::shortest(error) + " exceeds 1e-12");
  }
  return 2.0 * half * std::pow(s, power);
}

void require_table(const EntrySpec& spec) {
  if (spec.table.empty()) throw std::invalid_argument("table family needs at least one atom");
}

}  // namespace

std::string family_name(Family family) {
  switch (family) {
    case Family::gaussian: return "gaussian";
    case Family::rademacher: return "rademacher";
    case Family::uniform: return "uniform";
    case Family::student_t: return "student_t";
    case Family::table: return "table";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  if (name == "gaussian") return Family::gaussian;
  if (name == "rademacher") return Family::rademacher;
  if (name == "uniform") return Family::uniform;
  if (name == "student_t") return Family::student_t;
  if (name == "table") return Family::table;
  throw std::invalid_argument("unknown ensemble family '" + name + "'");
}

std::string transform_name(Transform t) {
  switch (t) {
    case Transform::raw: return "raw";
    case Transform::truncated: return "truncated";
    case Transform::rescaled: return "rescaled";
  }
  return "unknown";
}

PopulationMoments population_moments(const EntrySpec& spec) {
  const double g = spec.gamma;
  PopulationMoments m;
  switch (spec.family) {
    case Family::gaussian:
      m.mean = 0.0;
      m.variance = 1.0;
      m.abs_moment = std::pow(2.0, g / 2.0) * std::tgamma((g + 1.0) / 2.0) /
                     std::sqrt(std::numbers::pi);
      break;
    case Family::rademacher:
      m.mean = 0.0;
      m.variance = 1.0;
      m.abs_moment = 1.0;
      break;
    case Family::uniform:
      m.mean = 0.0;
      m.variance = 1.0;
      m.abs_moment = std::pow(kSqrt3, g) / (g + 1.0);
      break;
    case Family::student_t: {
      const double df = spec.df;
      m.mean = 0.0;
      m.variance = (df / (df - 2.0)) * student_scale(df) * student_scale(df);
      if (g >= df) {
        m.abs_moment = std::numeric_limits<double>::infinity();
      } else {
        // E|t|^g = df^{g/2} Gamma((g+1)/2) Gamma((df-g)/2) / (sqrt(pi) Gamma(df/2))
        const double log_moment = 0.5 * g * std::log(df) + std::lgamma((g + 1.0) / 2.0) +
                                  std::lgamma((df - g) / 2.0) -
                                  0.5 * std::log(std::numbers::pi) - std::lgamma(df / 2.0);
        m.abs_moment = std::exp(log_moment) * std::pow(student_scale(df), g);
      }
      break;
    }
    case Family::table: {
      require_table(spec);
      double mean = 0.0, second = 0.0, absm = 0.0;
      for (const auto& atom : spec.table) {
        mean += atom.value * atom.probability;
        second += atom.value * atom.value * atom.probability;
        absm += std::pow(std::abs(atom.value), g) * atom.probability;
      }
      m.mean = mean;
      m.variance = second - mean * mean;
      m.abs_moment = absm;
      break;
    }
  }
  return m;
}

void validate(const EntrySpec& spec) {
  std::ostringstream why;
  if (!(spec.gamma > 2.0)) {
    why << "moment exponent gamma = " << spec.gamma << " must exceed 2";
    throw std::invalid_argument(why.str());
  }
  if (spec.family == Family::student_t && !(spec.df > 4.0)) {
    why << "student_t needs df > 4, got " << spec.df;
    throw std::invalid_argument(why.str());
  }
  if (spec.family == Family::table) {
    require_table(spec);
    double total = 0.0;
    for (const auto& atom : spec.table) {
      if (!(atom.probability >= 0.0)) throw std::invalid_argument("table: negative probability");
      total += atom.probability;
    }
    if (std::abs(total - 1.0) > kMomentTol) {
      why << "table probabilities sum to " << total << ", not 1";
      throw std::invalid_argument(why.str());
    }
  }
  const auto m = population_moments(spec);
  if (std::abs(m.mean) > kMomentTol) {
    why << family_name(spec.family) << ": population mean " << m.mean << " is not 0";
    throw std::invalid_argument(why.str());
  }
  if (std::abs(m.variance - 1.0) > kMomentTol) {
    why << family_name(spec.family) << ": population variance " << m.variance << " is not 1";
    throw std::invalid_argument(why.str());
  }
  if (!std::isfinite(m.abs_moment) || m.abs_moment > spec.moment_bound) {
    why << family_name(spec.family) << ": E|a|^" << spec.gamma << " = " << m.abs_moment
        << " exceeds moment bound " << spec.moment_bound;
    throw std::invalid_argument(why.str());
  }
}

double truncation_level(std::size_t n, double gamma) {
  return std::pow(static_cast<double>(n), 1.0 / gamma);
}

double truncated_mean(const EntrySpec& spec, double level) {
  switch (spec.family) {
    case Family::gaussian:
    case Family::rademacher:
    case Family::uniform:
    case Family::student_t:
      return 0.0;  // symmetric laws
    case Family::table: {
      double mean = 0.0;
      for (const auto& atom : spec.table) {
        if (std::abs(atom.value) <= level) mean += atom.value * atom.probability;
      }
      return mean;
    }
  }
  return 0.0;
}

double truncated_second_moment(const EntrySpec& spec, double level) {
  switch (spec.family) {
    case Family::gaussian:
      // E[a^2 1{|a|<=L}] = 1 - 2 Phi(-L) - 2 L phi(L)
      return 1.0 - 2.0 * normal_cdf(-level) - 2.0 * level * normal_pdf(level);
    case Family::rademacher:
      return level >= 1.0 ? 1.0 : 0.0;
    case Family::uniform:
      if (level >= kSqrt3) return 1.0;
      return level * level * level / (3.0 * kSqrt3);
    case Family::student_t:
      return student_truncated_abs_moment(spec.df, level, 2.0);
    case Family::table: {
      double second = 0.0;
      for (const auto& atom : spec.table) {
        if (std::abs(atom.value) <= level) second += atom.value * atom.value * atom.probability;
      }
      return second;
    }
  }
  return 0.0;
}

PopulationMoments truncated_centered_moments(const EntrySpec& spec, double level) {
  const double mu = truncated_mean(spec, level);
  PopulationMoments m;
  m.mean = 0.0;
  m.variance = truncated_second_moment(spec, level) - mu * mu;
  m.abs_moment = std::numeric_limits<double>::quiet_NaN();
  return m;
}

double sample_one(const EntrySpec& spec, CounterRng& rng) {
  switch (spec.family) {
    case Family::gaussian:
      return rng.normal();
    case Family::rademacher:
      return (rng.next_u64() >> 63) ? 1.0 : -1.0;
    case Family::uniform:
      return kSqrt3 * (2.0 * rng.uniform_open() - 1.0);
    case Family::student_t: {
      const boost::math::students_t_distribution<double> dist(spec.df);
      return boost::math::quantile(dist, rng.uniform_open()) * student_scale(spec.df);
    }
    case Family::table: {
      const double u = rng.uniform_open();
      double cumulative = 0.0;
      for (const auto& atom : spec.table) {
        cumulative += atom.probability;
        if (u < cumulative) return atom.value;
      }
      return spec.table.back().value;
    }
  }
  return 0.0;
}

EntryArray sample_entries(const EntrySpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_entries: n must be positive");
  validate(spec);
  EntryArray out;
  out.n = n;
  out.spec = spec;
  out.seed = seed;
  out.transform = Transform::raw;
  out.values.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    CounterRng rng(derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    out.values[i] = sample_one(spec, rng);
  }
  return out;
}

EntryArray truncate_center(const EntryArray& entries) {
  if (entries.transform != Transform::raw) {
    throw std::invalid_argument("truncate_center: input must be raw, got " +
                                transform_name(entries.transform));
  }
  const double level = truncation_level(entries.n, entries.spec.gamma);
  const double mu = truncated_mean(entries.spec, level);
  EntryArray out = entries;
  for (double& a : out.values) {
    a = (std::abs(a) <= level ? a : 0.0) - mu;
  }
  out.transform = Transform::truncated;
  return out;
}

EntryArray rescale_unit_variance(const EntryArray& entries) {
  if (entries.transform != Transform::truncated) {
    throw std::invalid_argument("rescale_unit_variance: input must be truncated, got " +
                                transform_name(entries.transform));
  }
  const double level = truncation_level(entries.n, entries.spec.gamma);
  const double var = truncated_centered_moments(entries.spec, level).variance;
  if (!(var > 0.0)) {
    throw std::domain_error("rescale_unit_variance: truncated law is degenerate (variance 0) at level " +
                            detail::shortest(level));
  }
  const double sd = std::sqrt(var);
  EntryArray out = entries;
  for (double& a : out.values) a /= sd;
  out.transform = Transform::rescaled;
  return out;
}

PopulationMoments rescaled_moments(const EntrySpec& spec, std::size_t n) {
  const double level = truncation_level(n, spec.gamma);
  const double mu = truncated_mean(spec, level);
  const double second = truncated_second_moment(spec, level);
  const double var = second - mu * mu;
  if (!(var > 0.0)) throw std::domain_error("rescaled_moments: degenerate truncated law");
  // E[(a1 - mu)] = 0 exactly; E[(a1 - mu)^2] / var recomputed from its parts.
  PopulationMoments m;
  m.mean = (mu - mu) / std::sqrt(var);
  m.variance = (second - 2.0 * mu * mu + mu * mu) / var;
  m.abs_moment = std::numeric_limits<double>::quiet_NaN();
  return m;
}

std::map<std::string, std::string> to_key_values(const EntrySpec& spec) {
  std::map<std::string, std::string> kv;
  kv["family"] = family_name(spec.family);
  kv["gamma"] = detail::shortest(spec.gamma);
  kv["moment_bound"] = detail::shortest(spec.moment_bound);
  if (spec.family == Family::student_t) kv["df"] = detail::shortest(spec.df);
  if (spec.family == Family::table) {
    std::string table;
    for (const auto& atom : spec.table) {
      if (!table.empty()) table += ',';
      table += detail::shortest(atom.value) + ':' + detail::shortest(atom.probability);
    }
    kv["table"] = table;
  }
  return kv;
}

EntrySpec spec_from_key_values(const std::map<std::string, std::string>& kv) {
  EntrySpec spec;
  if (auto it = kv.find("family"); it != kv.end()) spec.family = parse_family(it->second);
  if (auto it = kv.find("gamma"); it != kv.end()) spec.gamma = detail::parse_double(it->second);
  if (auto it = kv.find("moment_bound"); it != kv.end()) {
    spec.moment_bound = detail::parse_double(it->second);
  }
  if (auto it = kv.find("df"); it != kv.end()) spec.df = detail::parse_double(it->second);
  if (auto it = kv.find("table"); it != kv.end()) {
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) {
        throw std::invalid_argument("table atom '" + item + "' is not value:probability");
      }
      spec.table.push_back({detail::parse_double(item.substr(0, colon)),
                            detail::parse_double(item.substr(colon + 1))});
    }
  }
  for (const auto& [key, value] : kv) {
    if (key != "family" && key != "gamma" && key != "moment_bound" && key != "df" &&
        key != "table") {
      throw std::invalid_argument("unknown ensemble key '" + key + "'");
    }
  }
  return spec;
}

}  // namespace toeplab
