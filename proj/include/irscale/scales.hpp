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

#ifndef IRSCALE_SCALES_HPP
#define IRSCALE_SCALES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "irscale/error.hpp"
#include "irscale/measures.hpp"
#include "irscale/serp.hpp"

namespace irscale {

enum class ScaleType { kNominal, kOrdinal, kInterval, kRatio };

inline std::string_view to_string(ScaleType t) {
  switch (t) {
    case ScaleType::kNominal:
      return "nominal";
    case ScaleType::kOrdinal:
      return "ordinal";
    case ScaleType::kInterval:
      return "interval";
    case ScaleType::kRatio:
      return "ratio";
  }
  return "?";
}

inline ScaleType scale_type_from_name(std::string_view name) {
  if (name == "nominal") return ScaleType::kNominal;
  if (name == "ordinal") return ScaleType::kOrdinal;
  if (name == "interval") return ScaleType::kInterval;
  if (name == "ratio") return ScaleType::kRatio;
  throw InputError("unknown scale type '" + std::string(name) + "'");
}

inline constexpr double kDefaultDedupTolerance = 1e-12;  // absolute
inline constexpr double kDefaultEquispacingTolerance = 1e-9;  // relative

/// Three-way comparison where values within `abs_tol` are tied. This is the
/// same notion of equality used to deduplicate measurement points.
inline int compare_scores(double a, double b,
                          double abs_tol = kDefaultDedupTolerance) {
  if (std::abs(a - b) <= abs_tol) return 0;
  return a < b ? -1 : 1;
}

/// The distinct achievable values of a measure, sorted ascending.
struct MeasurementScale {
  std::vector<double> points;
  std::string source;
  ScaleType claimed_type = ScaleType::kOrdinal;

  std::size_t size() const noexcept { return points.size(); }
};

/// Sorts and merges values closer than `abs_tol` to the first member of their
/// run. The smallest member of each run is kept.
inline std::vector<double> dedup_points(std::vector<double> values,
                                        double abs_tol = kDefaultDedupTolerance) {
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    if (out.empty() || v - out.back() > abs_tol) out.push_back(v);
  }
  return out;
}

struct AffineTransform {
  double alpha = 1.0;
  double beta = 0.0;

  AffineTransform() = default;
  AffineTransform(double a, double b) : alpha(a), beta(b) {
    if (!(alpha > 0.0)) throw InputError("affine transform needs alpha > 0");
  }

  double operator()(double x) const noexcept { return alpha * x + beta; }
};

struct AffineFit {
  AffineTransform transform;
  double max_residual = 0.0;
};

/// Gap structure between consecutive points.
struct EquispacingVerdict {
  bool equispaced = false;
  std::vector<double> gaps;     // gaps[i] = points[i+1] - points[i]
  double mean_gap = 0.0;
  std::size_t worst_gap = 0;    // gap deviating most from the mean
  double worst_deviation = 0.0; // |gaps[worst_gap] - mean_gap| / mean_gap
  std::size_t smallest_gap = 0;
  std::size_t largest_gap = 0;
  double tolerance = kDefaultEquispacingTolerance;
};

/// Equal consecutive gaps within relative tolerance: the finite-set form of
/// the solvability condition for difference structures.
inline EquispacingVerdict check_equispaced(std::span<const double> points,
                                           double tol = kDefaultEquispacingTolerance) {
  if (points.size() < 2) {
    throw DegenerateError("scale with " + std::to_string(points.size()) +
                          " point(s) has no gaps");
  }
  if (!(tol > 0.0)) throw InputError("equi-spacing tolerance must be > 0");
  EquispacingVerdict v;
  v.tolerance = tol;
  v.gaps.resize(points.size() - 1);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    v.gaps[i] = points[i + 1] - points[i];
    if (!(v.gaps[i] > 0.0)) throw InputError("scale points must be strictly increasing");
  }
  v.mean_gap = (points.back() - points.front()) / static_cast<double>(v.gaps.size());
  double worst = -1.0;
  for (std::size_t i = 0; i < v.gaps.size(); ++i) {
    const double dev = std::abs(v.gaps[i] - v.mean_gap);
    if (dev > worst) {
      worst = dev;
      v.worst_gap = i;
    }
    if (v.gaps[i] < v.gaps[v.smallest_gap]) v.smallest_gap = i;
    if (v.gaps[i] > v.gaps[v.largest_gap]) v.largest_gap = i;
  }
  v.worst_deviation = worst / v.mean_gap;
  v.equispaced = worst <= tol * v.mean_gap;
  return v;
}

inline EquispacingVerdict check_equispaced(const MeasurementScale& scale,
                                           double tol = kDefaultEquispacingTolerance) {
  return check_equispaced(std::span<const double>(scale.points), tol);
}

/// Finds (alpha > 0, beta) with b[i] = alpha * a[i] + beta for every i.
///
/// The transform is solved from the two extreme points and then verified on
/// all interior points; a residual above tol * (range of b) rejects the fit.
inline std::optional<AffineFit> check_affine_equivalent(
    std::span<const double> a, std::span<const double> b,
    double tol = kDefaultEquispacingTolerance) {
  if (a.size() != b.size() || a.size() < 2) return std::nullopt;
  const double a_range = a.back() - a.front();
  const double b_range = b.back() - b.front();
  if (!(a_range > 0.0) || !(b_range > 0.0)) return std::nullopt;
  const double alpha = b_range / a_range;
  const double beta = b.front() - alpha * a.front();
  double max_residual = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    max_residual = std::max(max_residual, std::abs(b[i] - (alpha * a[i] + beta)));
  }
  if (max_residual > tol * b_range) return std::nullopt;
  return AffineFit{AffineTransform(alpha, beta), max_residual};
}

inline std::optional<AffineFit> check_affine_equivalent(
    const MeasurementScale& a, const MeasurementScale& b,
    double tol = kDefaultEquispacingTolerance) {
  return check_affine_equivalent(std::span<const double>(a.points),
                                 std::span<const double>(b.points), tol);
}

/// (phi[a] - phi[b]) / (phi[c] - phi[d]).
inline double ratio_of_intervals(std::span<const double> phi, std::size_t a,
                                 std::size_t b, std::size_t c, std::size_t d) {
  for (std::size_t idx : {a, b, c, d}) {
    if (idx >= phi.size()) {
      throw InputError("index " + std::to_string(idx) + " out of range for " +
                       std::to_string(phi.size()) + " values");
    }
  }
  const double denom = phi[c] - phi[d];
  if (denom == 0.0) throw DegenerateError("ratio of intervals: zero denominator");
  return (phi[a] - phi[b]) / denom;
}

/// Recall-base context used when scanning a universe. Without an explicit
/// context, RB-dependent measures assume RB = k, i.e. enough relevant
/// documents exist to fill any SERP of the universe.
inline std::optional<TopicContext> universe_context(
    const Measure& m, const SerpUniverse& universe,
    const std::optional<TopicContext>& ctx) {
  if (ctx || !m.rb_dependent()) return ctx;
  return TopicContext{"", static_cast<int>(universe.k()), m.g_max};
}

inline MeasurementScale achievable_points(const Measure& m, const SerpUniverse& universe,
                                          const std::optional<TopicContext>& ctx = {},
                                          double dedup_tol = kDefaultDedupTolerance) {
  m.validate();
  if (universe.grades().max() > m.g_max) {
    throw InputError("universe grades exceed the measure's g_max");
  }
  const auto eff = universe_context(m, universe, ctx);
  const TopicContext* c = eff ? &*eff : nullptr;
  std::unordered_set<double> seen;
  for (const Serp& s : universe) seen.insert(measure_value(m, s, c));
  MeasurementScale scale;
  scale.points = dedup_points(std::vector<double>(seen.begin(), seen.end()), dedup_tol);
  scale.source = m.name() + " k=" + std::to_string(universe.k()) +
                 " grades=0.." + std::to_string(universe.grades().max()) +
                 (universe.max_relevant()
                      ? " rb_cap=" + std::to_string(*universe.max_relevant())
                      : std::string());
  scale.claimed_type =
      scale.points.size() >= 2 && check_equispaced(scale).equispaced
          ? ScaleType::kInterval
          : ScaleType::kOrdinal;
  return scale;
}

/// Dense ranking of the achievable points. Rank i belongs to points[i].
class IntervalizedMapping {
 public:
  IntervalizedMapping() = default;
  IntervalizedMapping(std::vector<double> points, double match_tol,
                      bool normalized = false)
      : points_(std::move(points)), match_tol_(match_tol), normalized_(normalized) {}

  std::size_t size() const noexcept { return points_.size(); }
  std::span<const double> points() const noexcept { return points_; }
  bool normalized() const noexcept { return normalized_; }

  /// Dense rank of `value`, or nullopt when it is not an achievable point.
  std::optional<std::size_t> rank_of(double value) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), value - match_tol_);
    if (it == points_.end() || std::abs(*it - value) > match_tol_) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
  }

  /// Mapped value: integer rank, or rank / (n - 1) when normalized.
  double map(double value) const {
    auto r = rank_of(value);
    if (!r) {
      throw InputError("value " + std::to_string(value) +
                       " is not an achievable point of this scale");
    }
    return rank_value(*r);
  }

  double rank_value(std::size_t rank) const {
    if (!normalized_ || points_.size() < 2) return static_cast<double>(rank);
    return static_cast<double>(rank) / static_cast<double>(points_.size() - 1);
  }

  /// The intervalized scale itself: one mapped value per point.
  MeasurementScale mapped_scale() const {
    MeasurementScale s;
    s.points.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) s.points.push_back(rank_value(i));
    s.source = normalized_ ? "normalized dense ranks" : "dense ranks";
    s.claimed_type = ScaleType::kInterval;
    return s;
  }

 private:
  std::vector<double> points_;
  double match_tol_ = kDefaultDedupTolerance;
  bool normalized_ = false;
};

inline IntervalizedMapping intervalize(const MeasurementScale& scale, bool normalize = false,
                                       double match_tol = kDefaultDedupTolerance) {
  return IntervalizedMapping(scale.points, match_tol, normalize);
}

/// Scores the whole universe, sorts the distinct values and assigns each its
/// dense rank. Ties share a rank, so the weak order of the measure survives.
inline IntervalizedMapping intervalize(const Measure& m, const SerpUniverse& universe,
                                       const std::optional<TopicContext>& ctx = {},
                                       bool normalize = false,
                                       double dedup_tol = kDefaultDedupTolerance) {
  return intervalize(achievable_points(m, universe, ctx, dedup_tol), normalize, dedup_tol);
}

}  // namespace irscale

#endif  // IRSCALE_SCALES_HPP
