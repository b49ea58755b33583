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

// TREC run and qrels files.
//
//   run:   topic Q0 doc rank score tag
//   qrels: topic 0 doc grade
//
// Fields are whitespace separated. The rank column of a run is checked to be
// an integer and otherwise ignored: documents are ordered by descending score,
// ties by ascending doc id, and renumbered from 1.

#ifndef IRSCALE_TREC_HPP
#define IRSCALE_TREC_HPP

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "irscale/error.hpp"
#include "irscale/measures.hpp"
#include "irscale/serp.hpp"

namespace irscale::trec {

struct RunEntry {
  std::string doc;
  double score = 0.0;

  friend bool operator==(const RunEntry&, const RunEntry&) = default;
};

/// One system's ranked lists, keyed by topic, in final rank order.
struct Run {
  std::string name;
  std::map<std::string, std::vector<RunEntry>> topics;

  friend bool operator==(const Run&, const Run&) = default;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string where(const std::string& source, std::size_t line_no) {
  return source + ":" + std::to_string(line_no) + ": ";
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const char* end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

}  // namespace detail

inline Run parse_run(std::istream& in, const std::string& source = "<run>") {
  Run run;
  std::map<std::string, std::set<std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = detail::split_ws(line);
    if (f.empty()) continue;
    const auto at = detail::where(source, line_no);
    if (f.size() != 6) {
      throw InputError(at + "expected 6 fields, got " + std::to_string(f.size()));
    }
    if (f[1] != "Q0") throw InputError(at + "second field must be 'Q0'");
    long long rank = 0;
    if (!detail::parse_number(f[3], rank)) {
      throw InputError(at + "rank '" + std::string(f[3]) + "' is not an integer");
    }
    double score = 0.0;
    if (!detail::parse_number(f[4], score)) {
      throw InputError(at + "score '" + std::string(f[4]) + "' is not a number");
    }
    const std::string topic(f[0]);
    std::string doc(f[2]);
    if (!seen[topic].insert(doc).second) {
      throw InputError(at + "duplicate document '" + doc + "' in topic " + topic);
    }
    if (run.name.empty()) run.name = std::string(f[5]);
    run.topics[topic].push_back({std::move(doc), score});
  }
  for (auto& [topic, entries] : run.topics) {
    std::sort(entries.begin(), entries.end(), [](const RunEntry& a, const RunEntry& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.doc < b.doc;
    });
  }
  return run;
}

inline Run parse_run_file(const std::string& path) {
  auto in = detail::open(path);
  return parse_run(in, path);
}

/// Writes the run with consecutive ranks from 1.
inline void write_run(std::ostream& out, const Run& run) {
  for (const auto& [topic, entries] : run.topics) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      out << topic << " Q0 " << entries[i].doc << ' ' << (i + 1) << ' '
          << detail::format_double(entries[i].score) << ' ' << run.name << '\n';
    }
  }
}

/// Relevance judgments keyed by topic then document.
class Qrels {
 public:
  const std::map<std::string, std::map<std::string, Grade>>& judgments() const noexcept {
    return judgments_;
  }

  bool has_topic(const std::string& topic) const { return judgments_.count(topic) != 0; }

  std::vector<std::string> topics() const {
    std::vector<std::string> out;
    for (const auto& [t, _] : judgments_) out.push_back(t);
    return out;
  }

  /// Unjudged documents are grade 0.
  Grade grade(const std::string& topic, const std::string& doc) const {
    auto t = judgments_.find(topic);
    if (t == judgments_.end()) return 0;
    auto d = t->second.find(doc);
    return d == t->second.end() ? 0 : d->second;
  }

  /// Documents judged with grade > 0.
  int recall_base(const std::string& topic) const {
    auto t = judgments_.find(topic);
    if (t == judgments_.end()) return 0;
    int rb = 0;
    for (const auto& [_, g] : t->second) rb += g > 0;
    return rb;
  }

  Grade max_grade() const {
    Grade m = 0;
    for (const auto& [_, docs] : judgments_) {
      for (const auto& [__, g] : docs) m = std::max(m, g);
    }
    return m;
  }

  /// Topics with no positive judgment.
  std::vector<std::string> zero_rb_topics() const {
    std::vector<std::string> out;
    for (const auto& [t, _] : judgments_) {
      if (recall_base(t) == 0) out.push_back(t);
    }
    return out;
  }

  TopicContext context(const std::string& topic, Grade g_max) const {
    return TopicContext{topic, recall_base(topic), g_max};
  }

  std::map<std::string, TopicContext> contexts(Grade g_max) const {
    std::map<std::string, TopicContext> out;
    for (const auto& [t, _] : judgments_) out.emplace(t, context(t, g_max));
    return out;
  }

  void add(const std::string& topic, const std::string& doc, Grade grade) {
    if (grade < 0) throw InputError("negative grade for (" + topic + ", " + doc + ")");
    if (!judgments_[topic].emplace(doc, grade).second) {
      throw InputError("duplicate judgment for (" + topic + ", " + doc + ")");
    }
  }

  friend bool operator==(const Qrels&, const Qrels&) = default;

 private:
  std::map<std::string, std::map<std::string, Grade>> judgments_;
};

inline Qrels parse_qrels(std::istream& in, const std::string& source = "<qrels>") {
  Qrels q;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = detail::split_ws(line);
    if (f.empty()) continue;
    const auto at = detail::where(source, line_no);
    if (f.size() != 4) {
      throw InputError(at + "expected 4 fields, got " + std::to_string(f.size()));
    }
    if (f[1] != "0") throw InputError(at + "second field must be '0'");
    Grade grade = 0;
    if (!detail::parse_number(f[3], grade)) {
      throw InputError(at + "grade '" + std::string(f[3]) + "' is not an integer");
    }
    try {
      q.add(std::string(f[0]), std::string(f[2]), grade);
    } catch (const InputError& e) {
      throw InputError(at + e.what());
    }
  }
  return q;
}

inline Qrels parse_qrels_file(const std::string& path) {
  auto in = detail::open(path);
  return parse_qrels(in, path);
}

inline void write_qrels(std::ostream& out, const Qrels& q) {
  for (const auto& [topic, docs] : q.judgments()) {
    for (const auto& [doc, grade] : docs) {
      out << topic << " 0 " << doc << ' ' << grade << '\n';
    }
  }
}

}  // namespace irscale::trec

#endif  // IRSCALE_TREC_HPP
