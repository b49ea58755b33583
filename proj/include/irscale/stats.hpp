/*
 * Copyright 2026 The irscale Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef IRSCALE_STATS_HPP
#define IRSCALE_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "irscale/error.hpp"

namespace irscale::stats {

namespace detail {
inline void require_nonempty(std::span<const double> xs, const char* what) {
  if (xs.empty()) throw InputError(std::string(what) + " of an empty sample");
}
}  // namespace detail

inline double mean(std::span<const double> xs) {
  detail::require_nonempty(xs, "mean");
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

/// Linear interpolation between order statistics (Hyndman-Fan type 7).
inline double quantile(std::span<const double> xs, double q) {
  detail::require_nonempty(xs, "quantile");
  if (!(q >= 0.0 && q <= 1.0)) throw InputError("quantile level must lie in [0, 1]");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

/// True when quantile(xs, q) falls between two distinct order statistics.
inline bool quantile_interpolated(std::span<const double> xs, double q) {
  if (xs.empty()) return false;
  const double h = q * static_cast<double>(xs.size() - 1);
  return h != std::floor(h);
}

/// Even-length samples take the mean of the central pair.
inline double median(std::span<const double> xs) { return quantile(xs, 0.5); }

inline double geometric_mean(std::span<const double> xs) {
  detail::require_nonempty(xs, "geometric mean");
  double log_sum = 0.0;
  for (double x : xs) {
    if (!(x > 0.0)) throw InputError("geometric mean needs strictly positive values");
    log_sum += std::log(x);
  }
  return std::exp(log_sum / static_cast<double>(xs.size()));
}

inline double harmonic_mean(std::span<const double> xs) {
  detail::require_nonempty(xs, "harmonic mean");
  double inv_sum = 0.0;
  for (double x : xs) {
    if (!(x > 0.0)) throw InputError("harmonic mean needs strictly positive values");
    inv_sum += 1.0 / x;
  }
  return static_cast<double>(xs.size()) / inv_sum;
}

/// Most frequent value; the smallest one wins ties.
inline double mode(std::span<const double> xs) {
  detail::require_nonempty(xs, "mode");
  std::map<double, std::size_t> counts;
  for (double x : xs) ++counts[x];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

inline double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) throw InputError("standard deviation needs at least 2 values");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

/// Kendall's tau-b between two paired score vectors.
inline double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("kendall tau: length mismatch");
  if (x.size() < 2) throw DegenerateError("kendall tau needs at least 2 items");
  long long concordant = 0;
  long long discordant = 0;
  long long ties_x = 0;  // tied in x only
  long long ties_y = 0;  // tied in y only
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0) {
        ++ties_x;
      } else if (dy == 0.0) {
        ++ties_y;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  // Pairs untied in x, and pairs untied in y.
  const double n1 = static_cast<double>(concordant + discordant + ties_y);
  const double n2 = static_cast<double>(concordant + discordant + ties_x);
  if (n1 == 0.0 || n2 == 0.0) {
    throw DegenerateError("kendall tau undefined: one ranking is all ties");
  }
  return static_cast<double>(concordant - discordant) / std::sqrt(n1 * n2);
}

struct TTestResult {
  std::size_t n = 0;
  double mean_difference = 0.0;
  // Absent when the differences have zero variance or n < 2.
  std::optional<double> t;
  std::optional<double> p_value;

  bool degenerate() const noexcept { return !p_value.has_value(); }
  bool significant(double alpha) const noexcept { return p_value && *p_value < alpha; }
};

/// Two-sided paired t-test on x - y.
inline TTestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("paired t-test: length mismatch");
  TTestResult r;
  r.n = x.size();
  if (r.n == 0) return r;
  std::vector<double> d(r.n);
  for (std::size_t i = 0; i < r.n; ++i) d[i] = x[i] - y[i];
  r.mean_difference = mean(d);
  if (r.n < 2) return r;
  const double sd = sample_stddev(d);
  if (!(sd > 0.0)) return r;
  const double t = r.mean_difference / (sd / std::sqrt(static_cast<double>(r.n)));
  boost::math::students_t dist(static_cast<double>(r.n - 1));
  r.t = t;
  r.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
  return r;
}

struct SignTestResult {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t ties = 0;
  double p_value = 1.0;

  bool significant(double alpha) const noexcept { return p_value < alpha; }
};

/// Exact two-sided binomial sign test on x - y; zero differences are dropped.
inline SignTestResult sign_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("sign test: length mismatch");
  SignTestResult r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) {
      ++r.positive;
    } else if (x[i] < y[i]) {
      ++r.negative;
    } else {
      ++r.ties;
    }
  }
  const std::size_t n = r.positive + r.negative;
  if (n == 0) return r;
  const std::size_t tail = std::min(r.positive, r.negative);
  // P(X <= tail) for X ~ Binomial(n, 1/2). Direct products are exact for
  // small n; larger n goes through log space to avoid underflow of 2^-n.
  double cdf = 0.0;
  if (n <= 1000) {
    double term = std::ldexp(1.0, -static_cast<int>(n));
    for (std::size_t i = 0; i <= tail; ++i) {
      cdf += term;
      term = term * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
  } else {
    const double log_half_n = static_cast<double>(n) * std::log(0.5);
    for (std::size_t i = 0; i <= tail; ++i) {
      const double log_choose = std::lgamma(static_cast<double>(n) + 1.0) -
                                std::lgamma(static_cast<double>(i) + 1.0) -
                                std::lgamma(static_cast<double>(n - i) + 1.0);
      cdf += std::exp(log_choose + log_half_n);
    }
  }
  r.p_value = std::min(1.0, 2.0 * cdf);
  return r;
}

}  // namespace irscale::stats

#endif  // IRSCALE_STATS_HPP
