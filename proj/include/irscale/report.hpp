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

// CSV and JSON encodings of library results. Every JSON document carries
// "schema_version"; bump kSchemaVersion whenever a field changes meaning.
// Numbers are written in shortest round-trip form, so output is
// byte-stable for identical inputs.

#ifndef IRSCALE_REPORT_HPP
#define IRSCALE_REPORT_HPP

#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"

#include "irscale/analysis.hpp"
#include "irscale/meaningfulness.hpp"
#include "irscale/scales.hpp"
#include "irscale/trec.hpp"

namespace irscale::report {

using nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline std::string num(double v) { return trec::detail::format_double(v); }

inline ordered_json opt(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

// --- scales ---------------------------------------------------------------

inline ordered_json equispacing_json(const EquispacingVerdict& v) {
  return ordered_json{
      {"equispaced", v.equispaced},
      {"tolerance", v.tolerance},
      {"mean_gap", v.mean_gap},
      {"worst_gap", {{"index", v.worst_gap},
                     {"between_points", {v.worst_gap, v.worst_gap + 1}},
                     {"gap", v.gaps[v.worst_gap]},
                     {"relative_deviation", v.worst_deviation}}},
      {"smallest_gap", {{"index", v.smallest_gap}, {"gap", v.gaps[v.smallest_gap]}}},
      {"largest_gap", {{"index", v.largest_gap}, {"gap", v.gaps[v.largest_gap]}}},
  };
}

inline ordered_json affine_json(const std::optional<AffineFit>& fit) {
  if (!fit) return nullptr;
  return ordered_json{{"alpha", fit->transform.alpha},
                      {"beta", fit->transform.beta},
                      {"max_residual", fit->max_residual}};
}

inline ordered_json points_json(const MeasurementScale& s) {
  return ordered_json{{"schema_version", kSchemaVersion},
                      {"kind", "points"},
                      {"source", s.source},
                      {"claimed_type", std::string(to_string(s.claimed_type))},
                      {"count", s.points.size()},
                      {"points", s.points}};
}

inline void points_csv(std::ostream& out, const MeasurementScale& s) {
  out << "index,value\n";
  for (std::size_t i = 0; i < s.points.size(); ++i) out << i << ',' << num(s.points[i]) << '\n';
}

inline ordered_json mapping_json(const MeasurementScale& raw, const IntervalizedMapping& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    rows.push_back({{"value", m.points()[i]}, {"rank", i}, {"mapped", m.rank_value(i)}});
  }
  return ordered_json{{"schema_version", kSchemaVersion},
                      {"kind", "intervalized-mapping"},
                      {"source", raw.source},
                      {"normalized", m.normalized()},
                      {"count", m.size()},
                      {"mapping", rows}};
}

inline void mapping_csv(std::ostream& out, const IntervalizedMapping& m) {
  out << "value,rank,mapped\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << num(m.points()[i]) << ',' << i << ',' << num(m.rank_value(i)) << '\n';
  }
}

// --- meaningfulness -------------------------------------------------------

inline ordered_json sides_json(const StatementSides& s) {
  return ordered_json{{"lhs", s.lhs}, {"rhs", s.rhs}, {"interpolated", s.interpolated}};
}

inline ordered_json verdict_json(const std::string& statement, const MeaningfulnessVerdict& v,
                                 const MeaningfulnessOptions& opts) {
  ordered_json j{{"schema_version", kSchemaVersion},
                 {"kind", "meaningfulness-verdict"},
                 {"statement", statement},
                 {"family", std::string(to_string(v.family))},
                 {"scale_type", std::string(to_string(scale_for(v.family)))},
                 {"seed", opts.seed},
                 {"outcome", std::string(to_string(v.outcome))},
                 {"truth", v.truth},
                 {"values", sides_json(v.sides)},
                 {"fixed_witnesses_tried", v.fixed_tried},
                 {"trials_run", v.trials_run},
                 {"trials_requested", opts.n_trials},
                 {"inapplicable", v.inapplicable}};
  if (v.witness) {
    j["witness"] = ordered_json{{"transformation", v.witness->transformation.describe()},
                                {"origin", v.witness->origin},
                                {"truth_before", v.witness->truth_before},
                                {"truth_after", v.witness->truth_after},
                                {"values_before", sides_json(v.witness->before)},
                                {"values_after", sides_json(v.witness->after)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

// --- analysis -------------------------------------------------------------

/// Long format; absent cells are written as NA.
inline void matrix_csv(std::ostream& out, const ScoreMatrix& m) {
  out << "system,topic," << (m.intervalized ? "rank" : "score") << '\n';
  for (std::size_t s = 0; s < m.systems.size(); ++s) {
    for (std::size_t t = 0; t < m.topics.size(); ++t) {
      const auto& c = m.at(s, t);
      out << m.systems[s] << ',' << m.topics[t] << ',' << (c ? num(*c) : "NA") << '\n';
    }
  }
}

inline ordered_json matrix_json(const ScoreMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t s = 0; s < m.systems.size(); ++s) {
    ordered_json row = ordered_json::array();
    for (std::size_t t = 0; t < m.topics.size(); ++t) row.push_back(opt(m.at(s, t)));
    rows.push_back(row);
  }
  return ordered_json{{"schema_version", kSchemaVersion},
                      {"kind", "score-matrix"},
                      {"measure", m.measure},
                      {"intervalized", m.intervalized},
                      {"systems", m.systems},
                      {"topics", m.topics},
                      {"cells", rows},
                      {"warnings", m.warnings}};
}

inline ordered_json ttest_json(const stats::TTestResult& t) {
  return ordered_json{{"n", t.n},
                      {"mean_difference", t.mean_difference},
                      {"t", opt(t.t)},
                      {"p_value", opt(t.p_value)},
                      {"degenerate", t.degenerate()}};
}

inline ordered_json signtest_json(const stats::SignTestResult& s) {
  return ordered_json{{"positive", s.positive},
                      {"negative", s.negative},
                      {"ties", s.ties},
                      {"p_value", s.p_value}};
}

inline ordered_json comparison_json(const ComparisonReport& r) {
  ordered_json systems = ordered_json::array();
  for (const auto& s : r.systems) {
    systems.push_back({{"system", s.system},
                       {"coverage", s.coverage},
                       {"mean_raw", opt(s.mean_raw)},
                       {"mean_intervalized", opt(s.mean_intervalized)}});
  }
  ordered_json pairs = ordered_json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"a", p.a},
                     {"b", p.b},
                     {"n_topics", p.n_topics},
                     {"t_test", {{"raw", ttest_json(p.t_raw)},
                                 {"intervalized", ttest_json(p.t_intervalized)}}},
                     {"sign_test", {{"raw", signtest_json(p.sign_raw)},
                                    {"intervalized", signtest_json(p.sign_intervalized)}}}});
  }
  ordered_json dis = ordered_json::array();
  for (const auto& d : r.disagreements) {
    dis.push_back({{"a", d.a},
                   {"b", d.b},
                   {"test", d.test},
                   {"significant_raw", d.significant_raw},
                   {"significant_intervalized", d.significant_intervalized}});
  }
  return ordered_json{{"schema_version", kSchemaVersion},
                      {"kind", "comparison-report"},
                      {"measure", r.measure},
                      {"alpha", r.alpha},
                      {"n_topics", r.n_topics},
                      {"systems", systems},
                      {"ranking_raw", r.ranking_raw},
                      {"ranking_intervalized", r.ranking_intervalized},
                      {"kendall_tau_b", opt(r.kendall_tau)},
                      {"pairs", pairs},
                      {"agreements", r.agreements},
                      {"disagreements", dis},
                      {"warnings", r.warnings}};
}

/// One row per system pair.
inline void comparison_csv(std::ostream& out, const ComparisonReport& r) {
  auto p_or_na = [](const stats::TTestResult& t) {
    return t.p_value ? num(*t.p_value) : std::string("degenerate");
  };
  out << "a,b,n_topics,t_p_raw,t_p_intervalized,sign_p_raw,sign_p_intervalized,"
         "verdict_changed\n";
  for (const auto& p : r.pairs) {
    bool changed = false;
    for (const auto& d : r.disagreements) changed = changed || (d.a == p.a && d.b == p.b);
    out << p.a << ',' << p.b << ',' << p.n_topics << ',' << p_or_na(p.t_raw) << ','
        << p_or_na(p.t_intervalized) << ',' << num(p.sign_raw.p_value) << ','
        << num(p.sign_intervalized.p_value) << ',' << (changed ? "yes" : "no") << '\n';
  }
}

}  // namespace irscale::report

#endif  // IRSCALE_REPORT_HPP
