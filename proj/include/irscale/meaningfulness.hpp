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

// Meaningfulness of statistical statements: a statement is meaningful on a
// scale when its truth value survives every permissible transformation of
// that scale. The allowable-statistics whitelist gives an analytic answer;
// otherwise transformations are sampled, which can refute but never prove.

#ifndef IRSCALE_MEANINGFULNESS_HPP
#define IRSCALE_MEANINGFULNESS_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "irscale/error.hpp"
#include "irscale/scales.hpp"
#include "irscale/stats.hpp"

namespace irscale {

/// Named score samples a statement refers to.
using Samples = std::map<std::string, std::vector<double>>;

// ---------------------------------------------------------------------------
// Transformations

enum class FamilyKind {
  kOneToOne,  // nominal
  kMonotone,  // ordinal
  kAffine,    // interval
  kLinear,    // ratio
};

inline FamilyKind family_for(ScaleType t) {
  switch (t) {
    case ScaleType::kNominal:
      return FamilyKind::kOneToOne;
    case ScaleType::kOrdinal:
      return FamilyKind::kMonotone;
    case ScaleType::kInterval:
      return FamilyKind::kAffine;
    case ScaleType::kRatio:
      return FamilyKind::kLinear;
  }
  return FamilyKind::kAffine;
}

inline ScaleType scale_for(FamilyKind f) {
  switch (f) {
    case FamilyKind::kOneToOne:
      return ScaleType::kNominal;
    case FamilyKind::kMonotone:
      return ScaleType::kOrdinal;
    case FamilyKind::kAffine:
      return ScaleType::kInterval;
    case FamilyKind::kLinear:
      return ScaleType::kRatio;
  }
  return ScaleType::kInterval;
}

inline std::string_view to_string(FamilyKind f) {
  switch (f) {
    case FamilyKind::kOneToOne:
      return "one-to-one";
    case FamilyKind::kMonotone:
      return "monotone-increasing";
    case FamilyKind::kAffine:
      return "affine";
    case FamilyKind::kLinear:
      return "linear";
  }
  return "?";
}

/// x -> x^exponent; only applied to strictly positive covers.
struct PowerMap {
  double exponent = 2.0;
};

/// Strictly increasing map through (xs[i], ys[i]), linear in between and
/// extended with the end slopes outside the anchors.
struct PiecewiseLinearMap {
  std::vector<double> xs;
  std::vector<double> ys;
};

/// Bijection of a finite value set onto itself.
struct PermutationMap {
  std::vector<double> from;  // sorted
  std::vector<double> to;
};

class Transformation {
 public:
  using Repr = std::variant<AffineTransform, PowerMap, PiecewiseLinearMap, PermutationMap>;

  Transformation() = default;
  explicit Transformation(Repr r, std::string label = {})
      : repr_(std::move(r)), label_(std::move(label)) {}

  double operator()(double x) const {
    return std::visit([x](const auto& f) { return apply(f, x); }, repr_);
  }

  const Repr& repr() const noexcept { return repr_; }
  /// Short name for fixed witnesses ("celsius-to-fahrenheit"); empty if sampled.
  const std::string& label() const noexcept { return label_; }

  std::string describe() const {
    return std::visit([](const auto& f) { return describe_impl(f); }, repr_);
  }

 private:
  static double apply(const AffineTransform& f, double x) { return f(x); }
  static double apply(const PowerMap& f, double x) { return std::pow(x, f.exponent); }
  static double apply(const PiecewiseLinearMap& f, double x) {
    const auto& xs = f.xs;
    const auto& ys = f.ys;
    if (xs.size() == 1) return ys[0] + (x - xs[0]);
    std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    hi = std::clamp<std::size_t>(hi, 1, xs.size() - 1);
    const std::size_t lo = hi - 1;
    const double slope = (ys[hi] - ys[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + slope * (x - xs[lo]);
  }
  static double apply(const PermutationMap& f, double x) {
    auto it = std::lower_bound(f.from.begin(), f.from.end(), x);
    if (it == f.from.end() || *it != x) {
      throw InputError("permutation map is undefined outside its cover");
    }
    return f.to[static_cast<std::size_t>(it - f.from.begin())];
  }

  static std::string num(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  }
  static std::string describe_impl(const AffineTransform& f) {
    return "affine(alpha=" + num(f.alpha) + ", beta=" + num(f.beta) + ")";
  }
  static std::string describe_impl(const PowerMap& f) {
    return "power(exponent=" + num(f.exponent) + ")";
  }
  static std::string describe_impl(const PiecewiseLinearMap& f) {
    return "monotone-piecewise-linear(" + std::to_string(f.xs.size()) + " anchors)";
  }
  static std::string describe_impl(const PermutationMap& f) {
    return "permutation(" + std::to_string(f.from.size()) + " values)";
  }

  Repr repr_{AffineTransform{}};
  std::string label_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Uniform [0, 1) with 53 random bits. Portable across standard libraries,
/// unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

inline std::vector<double> distinct_sorted(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

/// Seed of trial `index` derived from a run seed. Trials are independent.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return detail::splitmix64(detail::splitmix64(seed) ^ (index + 1));
}

/// Draws a random member of `family`, valid on every value of `cover`.
///
/// affine: alpha ~ logUniform[1e-2, 1e2], beta ~ Uniform[-100, 100]
/// linear: same alpha, beta = 0
/// monotone: piecewise linear through the sorted cover with positive
///   logUniform[1e-2, 1e2] increments, starting at Uniform[-100, 100]
/// one-to-one: uniform random permutation of the distinct cover values
inline Transformation sample_transformation(FamilyKind family, std::uint64_t seed,
                                            std::span<const double> cover) {
  if (cover.empty()) throw InputError("transformation cover is empty");
  std::mt19937_64 rng(seed);
  switch (family) {
    case FamilyKind::kAffine: {
      const double alpha = detail::log_uniform(rng, 1e-2, 1e2);
      const double beta = detail::uniform(rng, -100.0, 100.0);
      return Transformation(AffineTransform(alpha, beta));
    }
    case FamilyKind::kLinear:
      return Transformation(AffineTransform(detail::log_uniform(rng, 1e-2, 1e2), 0.0));
    case FamilyKind::kMonotone: {
      PiecewiseLinearMap f;
      f.xs = detail::distinct_sorted(cover);
      f.ys.resize(f.xs.size());
      f.ys[0] = detail::uniform(rng, -100.0, 100.0);
      for (std::size_t i = 1; i < f.ys.size(); ++i) {
        f.ys[i] = f.ys[i - 1] + detail::log_uniform(rng, 1e-2, 1e2);
      }
      return Transformation(std::move(f));
    }
    case FamilyKind::kOneToOne: {
      PermutationMap f;
      f.from = detail::distinct_sorted(cover);
      f.to = f.from;
      for (std::size_t i = f.to.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng() % i);
        std::swap(f.to[i - 1], f.to[j]);
      }
      return Transformation(std::move(f));
    }
  }
  return Transformation();
}

struct TransformationFamily {
  FamilyKind kind = FamilyKind::kAffine;

  Transformation sample(std::uint64_t seed, std::span<const double> cover) const {
    return sample_transformation(kind, seed, cover);
  }
};

/// Deterministic witnesses tried before any random trial: Celsius to
/// Fahrenheit, doubling, a unit shift and, for monotone and one-to-one
/// families on positive covers, squaring.
inline std::vector<Transformation> fixed_witnesses(FamilyKind family,
                                                   std::span<const double> cover) {
  std::vector<Transformation> out;
  if (family != FamilyKind::kLinear) {
    out.emplace_back(AffineTransform(9.0 / 5.0, 32.0), "celsius-to-fahrenheit");
  }
  out.emplace_back(AffineTransform(2.0, 0.0), "double");
  if (family != FamilyKind::kLinear) {
    out.emplace_back(AffineTransform(1.0, 1.0), "shift-by-one");
  }
  const bool positive =
      !cover.empty() && std::all_of(cover.begin(), cover.end(), [](double v) { return v > 0.0; });
  if ((family == FamilyKind::kMonotone || family == FamilyKind::kOneToOne) && positive) {
    out.emplace_back(PowerMap{2.0}, "square");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Statements

enum class Statistic {
  kMean,
  kMedian,
  kQuantile,
  kGeometricMean,
  kHarmonicMean,
  kMode,
  kDiffRatio,
};

inline std::string_view to_string(Statistic s) {
  switch (s) {
    case Statistic::kMean:
      return "mean";
    case Statistic::kMedian:
      return "median";
    case Statistic::kQuantile:
      return "quantile";
    case Statistic::kGeometricMean:
      return "geomean";
    case Statistic::kHarmonicMean:
      return "harmean";
    case Statistic::kMode:
      return "mode";
    case Statistic::kDiffRatio:
      return "diffratio";
  }
  return "?";
}

enum class Relation { kLess, kEqual, kGreater };

inline std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::kLess:
      return "<";
    case Relation::kEqual:
      return "=";
    case Relation::kGreater:
      return ">";
  }
  return "?";
}

/// One element of a named sample, e.g. A[2] (0-based).
struct ElementRef {
  std::string sample;
  std::size_t index = 0;
};

/// `stat(lhs) rel stat(rhs)`, or for kDiffRatio
/// `(a - b) / (c - d) rel target`.
struct Statement {
  Statistic statistic = Statistic::kMean;
  double quantile_level = 0.5;  // kQuantile only
  Relation relation = Relation::kLess;
  std::string lhs;
  std::string rhs;
  std::array<ElementRef, 4> diff{};  // kDiffRatio only
  double target = 0.0;               // kDiffRatio only
  /// Relative tolerance for '='. Zero selects exact comparison.
  double equality_tol = 1e-9;

  /// Names of every sample the statement reads.
  std::vector<std::string> referenced_samples() const {
    std::set<std::string> names;
    if (statistic == Statistic::kDiffRatio) {
      for (const auto& r : diff) names.insert(r.sample);
    } else {
      names.insert(lhs);
      names.insert(rhs);
    }
    return {names.begin(), names.end()};
  }
};

/// Both sides of a statement as numbers.
struct StatementSides {
  double lhs = 0.0;
  double rhs = 0.0;
  bool interpolated = false;  // a median/quantile fell between order statistics
};

namespace detail {

inline const std::vector<double>& lookup(const Samples& samples, const std::string& name) {
  auto it = samples.find(name);
  if (it == samples.end()) throw InputError("unresolved sample '" + name + "'");
  if (it->second.empty()) throw InputError("sample '" + name + "' is empty");
  return it->second;
}

inline double apply_statistic(const Statement& st, std::span<const double> xs,
                              bool& interpolated) {
  switch (st.statistic) {
    case Statistic::kMean:
      return stats::mean(xs);
    case Statistic::kMedian:
      interpolated = interpolated || stats::quantile_interpolated(xs, 0.5);
      return stats::median(xs);
    case Statistic::kQuantile:
      interpolated = interpolated || stats::quantile_interpolated(xs, st.quantile_level);
      return stats::quantile(xs, st.quantile_level);
    case Statistic::kGeometricMean:
      return stats::geometric_mean(xs);
    case Statistic::kHarmonicMean:
      return stats::harmonic_mean(xs);
    case Statistic::kMode:
      return stats::mode(xs);
    case Statistic::kDiffRatio:
      break;
  }
  throw InputError("diffratio is not a per-sample statistic");
}

}  // namespace detail

inline StatementSides statement_sides(const Statement& st, const Samples& samples) {
  StatementSides out;
  if (st.statistic == Statistic::kDiffRatio) {
    std::array<double, 4> v{};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& xs = detail::lookup(samples, st.diff[i].sample);
      if (st.diff[i].index >= xs.size()) {
        throw InputError("index " + std::to_string(st.diff[i].index) + " out of range for '" +
                         st.diff[i].sample + "'");
      }
      v[i] = xs[st.diff[i].index];
    }
    out.lhs = ratio_of_intervals(v, 0, 1, 2, 3);
    out.rhs = st.target;
    return out;
  }
  out.lhs = detail::apply_statistic(st, detail::lookup(samples, st.lhs), out.interpolated);
  out.rhs = detail::apply_statistic(st, detail::lookup(samples, st.rhs), out.interpolated);
  return out;
}

/// -1, 0, 1 with '=' decided by relative tolerance (exact when tol == 0).
inline int compare_relative(double a, double b, double tol) {
  if (a == b) return 0;
  if (tol > 0.0 && std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b))) return 0;
  return a < b ? -1 : 1;
}

inline bool holds(Relation rel, int cmp) {
  switch (rel) {
    case Relation::kLess:
      return cmp < 0;
    case Relation::kEqual:
      return cmp == 0;
    case Relation::kGreater:
      return cmp > 0;
  }
  return false;
}

inline bool evaluate_statement(const Statement& st, const Samples& samples) {
  const auto sides = statement_sides(st, samples);
  return holds(st.relation, compare_relative(sides.lhs, sides.rhs, st.equality_tol));
}

/// Whether the statistic is allowable on the scale type. Comparisons of the
/// mode on a nominal scale are only allowable as equalities.
inline bool whitelist_check(const Statement& st, ScaleType claimed) {
  const int level = static_cast<int>(claimed);
  switch (st.statistic) {
    case Statistic::kMode:
      return claimed != ScaleType::kNominal || st.relation == Relation::kEqual;
    case Statistic::kMedian:
    case Statistic::kQuantile:
      return level >= static_cast<int>(ScaleType::kOrdinal);
    case Statistic::kMean:
    case Statistic::kDiffRatio:
      return level >= static_cast<int>(ScaleType::kInterval);
    case Statistic::kGeometricMean:
    case Statistic::kHarmonicMean:
      return claimed == ScaleType::kRatio;
  }
  return false;
}

/// Applies `f` to every value of every sample.
inline Samples transform_samples(const Samples& samples, const Transformation& f) {
  Samples out;
  for (const auto& [name, xs] : samples) {
    auto& ys = out[name];
    ys.reserve(xs.size());
    for (double x : xs) ys.push_back(f(x));
  }
  return out;
}

enum class VerdictOutcome { kMeaningfulByRule, kNoCounterexample, kRefuted };

inline std::string_view to_string(VerdictOutcome o) {
  switch (o) {
    case VerdictOutcome::kMeaningfulByRule:
      return "meaningful-by-rule";
    case VerdictOutcome::kNoCounterexample:
      return "no-counterexample-found";
    case VerdictOutcome::kRefuted:
      return "refuted";
  }
  return "?";
}

struct Witness {
  Transformation transformation;
  std::string origin;  // "fixed:<label>" or "trial:<index>"
  StatementSides before;
  StatementSides after;
  bool truth_before = false;
  bool truth_after = false;
};

struct MeaningfulnessVerdict {
  VerdictOutcome outcome = VerdictOutcome::kNoCounterexample;
  FamilyKind family = FamilyKind::kAffine;
  bool truth = false;  // truth value on the original samples
  StatementSides sides;
  std::size_t fixed_tried = 0;
  std::size_t trials_run = 0;
  std::size_t inapplicable = 0;  // skipped: transformed values left the statistic's domain
  std::optional<Witness> witness;
};

struct MeaningfulnessOptions {
  std::size_t n_trials = 1000;
  std::uint64_t seed = 0;
  bool use_whitelist = true;
};

/// Whitelist first; otherwise the fixed witnesses then `n_trials` seeded
/// members of `family`, each applied to all samples at once. The first
/// member that flips the truth value is returned as the witness.
inline MeaningfulnessVerdict check_meaningfulness(const Statement& st, const Samples& samples,
                                                  TransformationFamily family,
                                                  const MeaningfulnessOptions& opts) {
  if (opts.n_trials < 1) throw InputError("n_trials must be >= 1");
  MeaningfulnessVerdict v;
  v.family = family.kind;
  v.sides = statement_sides(st, samples);
  v.truth = holds(st.relation, compare_relative(v.sides.lhs, v.sides.rhs, st.equality_tol));

  if (opts.use_whitelist && whitelist_check(st, scale_for(family.kind))) {
    v.outcome = VerdictOutcome::kMeaningfulByRule;
    return v;
  }

  // Only the referenced samples are transformed, and they define the cover.
  Samples used;
  std::vector<double> cover;
  for (const auto& name : st.referenced_samples()) {
    const auto& xs = detail::lookup(samples, name);
    used[name] = xs;
    cover.insert(cover.end(), xs.begin(), xs.end());
  }

  auto try_member = [&](const Transformation& f, std::string origin) -> bool {
    StatementSides after;
    try {
      after = statement_sides(st, transform_samples(used, f));
    } catch (const Error&) {
      ++v.inapplicable;
      return false;
    }
    if (!std::isfinite(after.lhs) || !std::isfinite(after.rhs)) {
      ++v.inapplicable;
      return false;
    }
    const bool truth = holds(st.relation, compare_relative(after.lhs, after.rhs, st.equality_tol));
    if (truth == v.truth) return false;
    v.outcome = VerdictOutcome::kRefuted;
    v.witness = Witness{f, std::move(origin), v.sides, after, v.truth, truth};
    return true;
  };

  for (const auto& f : fixed_witnesses(family.kind, cover)) {
    ++v.fixed_tried;
    if (try_member(f, "fixed:" + f.label())) return v;
  }
  for (std::size_t i = 0; i < opts.n_trials; ++i) {
    ++v.trials_run;
    if (try_member(family.sample(trial_seed(opts.seed, i), cover),
                   "trial:" + std::to_string(i))) {
      return v;
    }
  }
  v.outcome = VerdictOutcome::kNoCounterexample;
  return v;
}

}  // namespace irscale

#endif  // IRSCALE_MEANINGFULNESS_HPP
