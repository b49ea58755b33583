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

// Comparative harness: score runs with a measure, replace every score with its
// intervalized rank, then compare system rankings and paired significance
// tests between the two scorings.

#ifndef IRSCALE_ANALYSIS_HPP
#define IRSCALE_ANALYSIS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "irscale/error.hpp"
#include "irscale/measures.hpp"
#include "irscale/scales.hpp"
#include "irscale/serp.hpp"
#include "irscale/stats.hpp"
#include "irscale/trec.hpp"

namespace irscale {

/// Scores per (system, topic). Missing cells are explicit.
struct ScoreMatrix {
  std::vector<std::string> systems;
  std::vector<std::string> topics;
  std::vector<std::optional<double>> cells;  // row-major, systems x topics
  std::string measure;
  bool intervalized = false;
  std::vector<std::string> warnings;

  ScoreMatrix() = default;
  ScoreMatrix(std::vector<std::string> s, std::vector<std::string> t)
      : systems(std::move(s)), topics(std::move(t)), cells(systems.size() * topics.size()) {}

  std::optional<double>& at(std::size_t system, std::size_t topic) {
    return cells[system * topics.size() + topic];
  }
  const std::optional<double>& at(std::size_t system, std::size_t topic) const {
    return cells[system * topics.size() + topic];
  }

  std::size_t coverage(std::size_t system) const {
    std::size_t n = 0;
    for (std::size_t t = 0; t < topics.size(); ++t) n += at(system, t).has_value();
    return n;
  }
};

/// Top-k grades of a ranked list; unjudged documents are grade 0 and short
/// lists are padded with 0. Grades above g_max are clamped and counted.
inline Serp serp_from_run(const std::vector<trec::RunEntry>& entries, const trec::Qrels& qrels,
                          const std::string& topic, std::size_t k, Grade g_max,
                          std::size_t* clamped = nullptr) {
  Serp s(std::vector<Grade>(k, 0));
  for (std::size_t i = 0; i < std::min(k, entries.size()); ++i) {
    Grade g = qrels.grade(topic, entries[i].doc);
    if (g > g_max) {
      g = g_max;
      if (clamped) ++*clamped;
    }
    s.grades[i] = g;
  }
  return s;
}

inline std::string cross_topic_warning(const Measure& m) {
  return m.name() + " is normalized by the per-topic recall base, so every topic " +
         "induces its own measurement scale; aggregates across topics mix scales (" +
         rb_dependence_report(m).explanation + ")";
}

inline ScoreMatrix score_runs(const std::vector<trec::Run>& runs, const trec::Qrels& qrels,
                              Measure m, std::size_t k) {
  if (k < 1) throw InputError("cutoff k must be >= 1");
  m.cutoff = k;
  m.validate();

  std::vector<std::string> systems;
  std::set<std::string> names;
  std::set<std::string> topic_set;
  for (const auto& run : runs) {
    if (!names.insert(run.name).second) {
      throw InputError("duplicate run name '" + run.name + "'");
    }
    systems.push_back(run.name);
    for (const auto& [topic, _] : run.topics) {
      if (!qrels.has_topic(topic)) {
        throw InputError("run '" + run.name + "' has topic " + topic + " without qrels");
      }
    }
  }
  for (const auto& t : qrels.topics()) topic_set.insert(t);

  ScoreMatrix out(std::move(systems), {topic_set.begin(), topic_set.end()});
  out.measure = m.name();
  out.warnings.push_back("unjudged documents are treated as grade 0");
  if (m.rb_dependent()) out.warnings.push_back(cross_topic_warning(m));

  std::size_t clamped = 0;
  for (std::size_t t = 0; t < out.topics.size(); ++t) {
    const auto& topic = out.topics[t];
    const auto ctx = qrels.context(topic, m.g_max);
    if (m.rb_dependent() && ctx.recall_base == 0) {
      out.warnings.push_back("topic " + topic + ": no relevant documents, " + m.name() +
                             " undefined; cells left absent");
      continue;
    }
    for (std::size_t s = 0; s < runs.size(); ++s) {
      auto it = runs[s].topics.find(topic);
      if (it == runs[s].topics.end() || it->second.empty()) {
        out.warnings.push_back("run '" + runs[s].name + "' has no documents for topic " +
                               topic + "; cell left absent");
        continue;
      }
      const Serp serp = serp_from_run(it->second, qrels, topic, k, m.g_max, &clamped);
      try {
        out.at(s, t) = measure_value(m, serp, m.rb_dependent() ? &ctx : nullptr);
      } catch (const DegenerateError& e) {
        out.warnings.push_back("topic " + topic + ", run '" + runs[s].name + "': " + e.what());
      }
    }
  }
  if (clamped > 0) {
    out.warnings.push_back(std::to_string(clamped) + " retrieved judgment(s) above g_max=" +
                           std::to_string(m.g_max) + " clamped to g_max");
  }
  return out;
}

struct IntervalizeOptions {
  /// Restrict every topic's universe to SERPs with at most min(RB, k)
  /// relevant documents. RB-dependent measures always use this restriction
  /// when RB < k, since larger SERPs have no defined score there.
  bool rb_constrained = false;
  std::uint64_t universe_cap = kDefaultUniverseCap;
  bool normalize = false;
};

/// Replaces every cell by its dense rank on the measure's universe of
/// length-k SERPs over `grades`.
///
/// Measures that do not depend on the recall base share one mapping across
/// topics (unless rb_constrained). RB-dependent measures get one mapping per
/// distinct recall base, built with that topic's context.
inline ScoreMatrix intervalize_matrix(const ScoreMatrix& matrix, Measure m, std::size_t k,
                                      const GradeSet& grades, const trec::Qrels* qrels = nullptr,
                                      const IntervalizeOptions& opts = {}) {
  m.cutoff = k;
  m.validate();
  const bool per_topic = m.rb_dependent() || opts.rb_constrained;
  if (per_topic && qrels == nullptr) {
    throw InputError("intervalizing " + m.name() + " per topic needs qrels");
  }

  std::map<std::pair<int, bool>, IntervalizedMapping> cache;
  auto mapping_for = [&](const std::string& topic) -> const IntervalizedMapping& {
    int rb = 0;
    std::optional<TopicContext> ctx;
    std::optional<std::size_t> cap;
    if (per_topic) {
      rb = qrels->recall_base(topic);
      if (rb < 1) throw DegenerateError("topic " + topic + " has no relevant documents");
      if (m.rb_dependent()) ctx = TopicContext{topic, rb, m.g_max};
      if (opts.rb_constrained || (m.rb_dependent() && static_cast<std::size_t>(rb) < k)) {
        cap = std::min<std::size_t>(static_cast<std::size_t>(rb), k);
      }
    }
    const auto key = std::make_pair(rb, cap.has_value());
    auto it = cache.find(key);
    if (it == cache.end()) {
      SerpUniverse u(k, grades, cap, opts.universe_cap);
      it = cache.emplace(key, intervalize(m, u, ctx, opts.normalize)).first;
    }
    return it->second;
  };

  ScoreMatrix out = matrix;
  out.intervalized = true;
  for (std::size_t t = 0; t < matrix.topics.size(); ++t) {
    for (std::size_t s = 0; s < matrix.systems.size(); ++s) {
      const auto& cell = matrix.at(s, t);
      if (!cell) continue;
      const auto& mapping = mapping_for(matrix.topics[t]);
      const auto rank = mapping.rank_of(*cell);
      if (!rank) {
        throw InputError("score " + trec::detail::format_double(*cell) + " of system '" +
                         matrix.systems[s] + "' on topic " + matrix.topics[t] +
                         " is not an achievable point of " + m.name() +
                         " (measure/universe mismatch?)");
      }
      out.at(s, t) = mapping.rank_value(*rank);
    }
  }
  return out;
}

struct SystemSummary {
  std::string system;
  std::optional<double> mean_raw;
  std::optional<double> mean_intervalized;
  std::size_t coverage = 0;
};

struct PairComparison {
  std::string a;
  std::string b;
  std::size_t n_topics = 0;  // topics where both systems have a score
  stats::TTestResult t_raw;
  stats::TTestResult t_intervalized;
  stats::SignTestResult sign_raw;
  stats::SignTestResult sign_intervalized;
};

struct Disagreement {
  std::string a;
  std::string b;
  std::string test;  // "t-test" or "sign-test"
  bool significant_raw = false;
  bool significant_intervalized = false;
};

struct ComparisonReport {
  std::string measure;
  double alpha = 0.05;
  std::size_t n_topics = 0;
  std::vector<SystemSummary> systems;
  std::vector<std::string> ranking_raw;
  std::vector<std::string> ranking_intervalized;
  std::optional<double> kendall_tau;
  std::vector<PairComparison> pairs;
  std::size_t agreements = 0;
  std::vector<Disagreement> disagreements;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<std::string> rank_by_mean(const std::vector<SystemSummary>& systems,
                                             bool intervalized) {
  std::vector<const SystemSummary*> order;
  for (const auto& s : systems) {
    if ((intervalized ? s.mean_intervalized : s.mean_raw).has_value()) order.push_back(&s);
  }
  std::stable_sort(order.begin(), order.end(), [&](const auto* x, const auto* y) {
    const double mx = *(intervalized ? x->mean_intervalized : x->mean_raw);
    const double my = *(intervalized ? y->mean_intervalized : y->mean_raw);
    if (mx != my) return mx > my;
    return x->system < y->system;
  });
  std::vector<std::string> out;
  for (const auto* s : order) out.push_back(s->system);
  return out;
}

}  // namespace detail

inline ComparisonReport compare(const ScoreMatrix& raw, const ScoreMatrix& iv, double alpha) {
  if (raw.systems != iv.systems || raw.topics != iv.topics) {
    throw InputError("raw and intervalized matrices do not share systems and topics");
  }
  if (raw.systems.size() < 2 || raw.topics.size() < 2) {
    throw DegenerateError("comparison needs at least 2 systems and 2 topics");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");

  ComparisonReport r;
  r.measure = raw.measure;
  r.alpha = alpha;
  r.n_topics = raw.topics.size();
  r.warnings = raw.warnings;

  std::vector<double> tau_x;
  std::vector<double> tau_y;
  for (std::size_t s = 0; s < raw.systems.size(); ++s) {
    SystemSummary sum;
    sum.system = raw.systems[s];
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t t = 0; t < raw.topics.size(); ++t) {
      if (raw.at(s, t) && iv.at(s, t)) {
        xs.push_back(*raw.at(s, t));
        ys.push_back(*iv.at(s, t));
      }
    }
    sum.coverage = xs.size();
    if (!xs.empty()) {
      sum.mean_raw = stats::mean(xs);
      sum.mean_intervalized = stats::mean(ys);
      tau_x.push_back(*sum.mean_raw);
      tau_y.push_back(*sum.mean_intervalized);
    } else {
      r.warnings.push_back("system '" + sum.system + "' has no scored topics");
    }
    if (sum.coverage < raw.topics.size() && !xs.empty()) {
      r.warnings.push_back("system '" + sum.system + "' mean over " +
                           std::to_string(sum.coverage) + " of " +
                           std::to_string(raw.topics.size()) + " topics");
    }
    r.systems.push_back(std::move(sum));
  }
  r.ranking_raw = detail::rank_by_mean(r.systems, false);
  r.ranking_intervalized = detail::rank_by_mean(r.systems, true);
  try {
    r.kendall_tau = stats::kendall_tau_b(tau_x, tau_y);
  } catch (const DegenerateError& e) {
    r.warnings.push_back(std::string("kendall tau: ") + e.what());
  }

  for (std::size_t a = 0; a < raw.systems.size(); ++a) {
    for (std::size_t b = a + 1; b < raw.systems.size(); ++b) {
      std::vector<double> xa, xb, ya, yb;
      for (std::size_t t = 0; t < raw.topics.size(); ++t) {
        if (raw.at(a, t) && raw.at(b, t) && iv.at(a, t) && iv.at(b, t)) {
          xa.push_back(*raw.at(a, t));
          xb.push_back(*raw.at(b, t));
          ya.push_back(*iv.at(a, t));
          yb.push_back(*iv.at(b, t));
        }
      }
      PairComparison p;
      p.a = raw.systems[a];
      p.b = raw.systems[b];
      p.n_topics = xa.size();
      p.t_raw = stats::paired_t_test(xa, xb);
      p.t_intervalized = stats::paired_t_test(ya, yb);
      p.sign_raw = stats::sign_test(xa, xb);
      p.sign_intervalized = stats::sign_test(ya, yb);

      bool agree = true;
      const bool t_raw = p.t_raw.significant(alpha);
      const bool t_iv = p.t_intervalized.significant(alpha);
      if (t_raw != t_iv) {
        r.disagreements.push_back({p.a, p.b, "t-test", t_raw, t_iv});
        agree = false;
      }
      const bool s_raw = p.sign_raw.significant(alpha);
      const bool s_iv = p.sign_intervalized.significant(alpha);
      if (s_raw != s_iv) {
        r.disagreements.push_back({p.a, p.b, "sign-test", s_raw, s_iv});
        agree = false;
      }
      r.agreements += agree;
      r.pairs.push_back(std::move(p));
    }
  }
  return r;
}

}  // namespace irscale

#endif  // IRSCALE_ANALYSIS_HPP
