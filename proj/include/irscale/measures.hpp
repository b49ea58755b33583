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

// Evaluation measures over SERPs.
//
// Positions are 1-indexed in every formula below. When a cutoff is set the
// SERP is read up to that depth and missing positions count as grade 0.
//
//   P@k  = (#relevant in top k) / k
//   RR   = 1 / rank of the first relevant document, 0 if none
//   AP   = (1/RB) * sum over relevant i of P@i
//   DCG  = sum gain(g_i) / log2(i + 1)
//   nDCG = DCG / IDCG, IDCG over min(RB, k) documents of grade g_max
//   RBP  = (1 - p) * sum (g_i / g_max) * p^(i-1)
//   ERR  = sum (1/i) * R_i * prod_{j<i} (1 - R_j), R = (2^g - 1) / 2^g_max

#ifndef IRSCALE_MEASURES_HPP
#define IRSCALE_MEASURES_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "irscale/error.hpp"
#include "irscale/serp.hpp"

namespace irscale {

enum class MeasureKind {
  kPrecision,
  kReciprocalRank,
  kAveragePrecision,
  kDcg,
  kNdcg,
  kRbp,
  kErr,
};

enum class GainFunction {
  kExponential,  // 2^g - 1
  kLinear,       // g
};

struct Measure {
  MeasureKind kind = MeasureKind::kReciprocalRank;
  double persistence = 0.5;           // RBP only
  std::optional<std::size_t> cutoff;  // evaluation depth; SERP length if unset
  Grade g_max = 1;
  GainFunction gain = GainFunction::kExponential;  // DCG and nDCG

  static Measure precision(std::size_t k) {
    Measure m;
    m.kind = MeasureKind::kPrecision;
    m.cutoff = k;
    return m;
  }
  static Measure reciprocal_rank() { return Measure{}; }
  static Measure average_precision() {
    Measure m;
    m.kind = MeasureKind::kAveragePrecision;
    return m;
  }
  static Measure dcg(Grade g_max = 1) {
    return {MeasureKind::kDcg, 0.5, std::nullopt, g_max, GainFunction::kExponential};
  }
  static Measure ndcg(Grade g_max = 1) {
    return {MeasureKind::kNdcg, 0.5, std::nullopt, g_max, GainFunction::kExponential};
  }
  static Measure rbp(double p, Grade g_max = 1) {
    return {MeasureKind::kRbp, p, std::nullopt, g_max, GainFunction::kExponential};
  }
  static Measure err(Grade g_max = 1) {
    return {MeasureKind::kErr, 0.5, std::nullopt, g_max, GainFunction::kExponential};
  }

  /// True iff the formula references the recall base or an ideal ranking.
  bool rb_dependent() const noexcept {
    return kind == MeasureKind::kAveragePrecision || kind == MeasureKind::kNdcg;
  }

  void validate() const {
    if (kind == MeasureKind::kRbp && !(persistence > 0.0 && persistence < 1.0)) {
      throw InputError("RBP persistence must lie in (0, 1)");
    }
    if (cutoff && *cutoff == 0) throw InputError("measure cutoff must be >= 1");
    if (kind == MeasureKind::kPrecision && !cutoff) {
      throw InputError("P@k needs a cutoff");
    }
    if (g_max < 1) throw InputError("g_max must be >= 1");
  }

  std::string name() const {
    const std::string at = cutoff ? "@" + std::to_string(*cutoff) : "";
    switch (kind) {
      case MeasureKind::kPrecision:
        return "P" + at;
      case MeasureKind::kReciprocalRank:
        return "RR" + at;
      case MeasureKind::kAveragePrecision:
        return "AP" + at;
      case MeasureKind::kDcg:
        return "DCG" + at;
      case MeasureKind::kNdcg:
        return "nDCG" + at;
      case MeasureKind::kRbp: {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof(buf), persistence);
        return "RBP(" + std::string(buf, res.ptr) + ")" + at;
      }
      case MeasureKind::kErr:
        return "ERR" + at;
    }
    return "?";
  }

  friend bool operator==(const Measure&, const Measure&) = default;
};

/// Builds a measure from a short name: p, rr, ap, dcg, ndcg, rbp, err.
inline Measure measure_from_name(std::string_view name, double persistence,
                                 std::optional<std::size_t> cutoff, Grade g_max) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  Measure m;
  if (lower == "p" || lower == "precision") {
    m.kind = MeasureKind::kPrecision;
  } else if (lower == "rr") {
    m.kind = MeasureKind::kReciprocalRank;
  } else if (lower == "ap") {
    m.kind = MeasureKind::kAveragePrecision;
  } else if (lower == "dcg") {
    m.kind = MeasureKind::kDcg;
  } else if (lower == "ndcg") {
    m.kind = MeasureKind::kNdcg;
  } else if (lower == "rbp") {
    m.kind = MeasureKind::kRbp;
  } else if (lower == "err") {
    m.kind = MeasureKind::kErr;
  } else {
    throw InputError("unknown measure '" + std::string(name) + "'");
  }
  m.persistence = persistence;
  m.cutoff = cutoff;
  m.g_max = g_max;
  m.validate();
  return m;
}

/// A measure value together with what produced it.
struct Score {
  double value = 0.0;
  std::string measure;
  std::optional<std::string> topic;
};

namespace detail {

inline double gain(GainFunction f, Grade g) {
  return f == GainFunction::kExponential ? std::exp2(static_cast<double>(g)) - 1.0
                                         : static_cast<double>(g);
}

inline void check_grades(std::span<const Grade> serp, Grade g_max) {
  for (Grade g : serp) {
    if (g < 0 || g > g_max) {
      throw InputError("grade " + std::to_string(g) + " outside [0, " +
                       std::to_string(g_max) + "]");
    }
  }
}

inline const TopicContext& require_context(const Measure& m,
                                           const TopicContext* ctx,
                                           std::size_t relevant_retrieved) {
  if (ctx == nullptr) {
    throw InputError(m.name() + " depends on the recall base; a topic context is required");
  }
  if (ctx->recall_base < 1) {
    throw DegenerateError(m.name() + " undefined for topic '" + ctx->topic_id +
                          "': recall base is 0");
  }
  if (relevant_retrieved > static_cast<std::size_t>(ctx->recall_base)) {
    throw InputError(m.name() + ": SERP holds " + std::to_string(relevant_retrieved) +
                     " relevant documents but topic '" + ctx->topic_id +
                     "' has recall base " + std::to_string(ctx->recall_base));
  }
  return *ctx;
}

}  // namespace detail

/// Raw value of `m` on `serp`. Hot path for universe scans.
inline double measure_value(const Measure& m, std::span<const Grade> serp,
                            const TopicContext* ctx = nullptr) {
  detail::check_grades(serp, m.g_max);
  const std::size_t depth = m.cutoff.value_or(serp.size());
  const std::size_t n = std::min(depth, serp.size());
  const auto top = serp.first(n);

  switch (m.kind) {
    case MeasureKind::kPrecision:
      return static_cast<double>(relevant_count(top)) / static_cast<double>(depth);

    case MeasureKind::kReciprocalRank:
      for (std::size_t i = 0; i < n; ++i) {
        if (top[i] > 0) return 1.0 / static_cast<double>(i + 1);
      }
      return 0.0;

    case MeasureKind::kAveragePrecision: {
      const auto& c = detail::require_context(m, ctx, relevant_count(top));
      double sum = 0.0;
      std::size_t hits = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (top[i] > 0) {
          ++hits;
          sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
      }
      return sum / static_cast<double>(c.recall_base);
    }

    case MeasureKind::kDcg:
    case MeasureKind::kNdcg: {
      double dcg = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dcg += detail::gain(m.gain, top[i]) / std::log2(static_cast<double>(i + 2));
      }
      if (m.kind == MeasureKind::kDcg) return dcg;
      const auto& c = detail::require_context(m, ctx, relevant_count(top));
      const std::size_t ideal_len =
          std::min(static_cast<std::size_t>(c.recall_base), depth);
      double idcg = 0.0;
      for (std::size_t i = 0; i < ideal_len; ++i) {
        idcg += detail::gain(m.gain, m.g_max) / std::log2(static_cast<double>(i + 2));
      }
      if (!(idcg > 0.0)) {
        throw DegenerateError(m.name() + ": undefined normalization (IDCG = 0)");
      }
      return dcg / idcg;
    }

    case MeasureKind::kRbp: {
      double sum = 0.0;
      double weight = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        sum += static_cast<double>(top[i]) / static_cast<double>(m.g_max) * weight;
        weight *= m.persistence;
      }
      return (1.0 - m.persistence) * sum;
    }

    case MeasureKind::kErr: {
      const double denom = std::exp2(static_cast<double>(m.g_max));
      double err = 0.0;
      double not_stopped = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = (std::exp2(static_cast<double>(top[i])) - 1.0) / denom;
        err += not_stopped * r / static_cast<double>(i + 1);
        not_stopped *= 1.0 - r;
      }
      return err;
    }
  }
  return 0.0;
}

inline Score eval_measure(const Measure& m, std::span<const Grade> serp,
                          const std::optional<TopicContext>& ctx = std::nullopt) {
  m.validate();
  Score s;
  s.value = measure_value(m, serp, ctx ? &*ctx : nullptr);
  s.measure = m.name();
  if (ctx) s.topic = ctx->topic_id;
  return s;
}

struct RecallBaseDependence {
  bool dependent = false;
  std::string explanation;
};

inline RecallBaseDependence rb_dependence_report(const Measure& m) {
  switch (m.kind) {
    case MeasureKind::kAveragePrecision:
      return {true, "normalized by RB: AP = (1/RB) * sum of P@i over relevant ranks"};
    case MeasureKind::kNdcg:
      return {true,
              "normalized by IDCG, the DCG of an ideal SERP holding min(RB, k) "
              "documents of grade g_max"};
    case MeasureKind::kPrecision:
      return {false, "divides by the cutoff k only; no recall-base term"};
    case MeasureKind::kReciprocalRank:
      return {false, "depends only on the rank of the first relevant document"};
    case MeasureKind::kDcg:
      return {false, "unnormalized sum of discounted gains; no recall-base term"};
    case MeasureKind::kRbp:
      return {false,
              "geometric weights (1-p)p^(i-1) fixed in advance; no recall-base term"};
    case MeasureKind::kErr:
      return {false, "cascade of per-rank stopping probabilities; no recall-base term"};
  }
  return {};
}

}  // namespace irscale

#endif  // IRSCALE_MEASURES_HPP
