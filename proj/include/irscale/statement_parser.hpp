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

// Statement grammar:
//
//   statement  := stat '(' sample ')' rel stat '(' sample ')'
//               | 'quantile' '(' sample ',' number ')' rel
//                 'quantile' '(' sample ',' number ')'
//               | 'diffratio' '(' elem ',' elem ';' elem ',' elem ')' rel number
//   stat       := mean | median | geomean | harmean | mode
//   sample     := NAME | '[' number (',' number)* ']'
//   elem       := sample '[' index ']' | number
//   rel        := '<' | '=' | '==' | '>'
//
// Inline lists become samples named by their canonical text, e.g. "[2,2,4]".
// Element indices are 0-based.

#ifndef IRSCALE_STATEMENT_PARSER_HPP
#define IRSCALE_STATEMENT_PARSER_HPP

#include <cctype>
#include <charconv>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "irscale/error.hpp"
#include "irscale/meaningfulness.hpp"

namespace irscale {

namespace detail {

class StatementLexer {
 public:
  explicit StatementLexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
            text_[pos_] == '.' || text_[pos_] == '-')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  double number() {
    skip_ws();
    double v = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    if (begin != end && *begin == '+') ++begin;
    auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return v;
  }

  std::size_t index() {
    skip_ws();
    std::size_t v = 0;
    auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (res.ec != std::errc()) fail("expected a non-negative index");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return v;
  }

  bool starts_number() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("statement '" + std::string(text_) + "': " + what + " at column " +
                     std::to_string(pos_ + 1));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string canonical_list_name(const std::vector<double>& values) {
  std::string name = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), values[i]);
    if (i) name += ',';
    name.append(buf, res.ptr);
  }
  return name + "]";
}

inline std::string parse_sample(StatementLexer& lex, Samples& samples) {
  if (lex.accept('[')) {
    std::vector<double> values{lex.number()};
    while (lex.accept(',')) values.push_back(lex.number());
    lex.expect(']');
    auto name = canonical_list_name(values);
    samples.emplace(name, std::move(values));
    return name;
  }
  auto name = lex.identifier();
  if (samples.find(name) == samples.end()) lex.fail("unresolved sample '" + name + "'");
  return name;
}

inline ElementRef parse_element(StatementLexer& lex, Samples& samples) {
  if (lex.starts_number()) {
    std::vector<double> v{lex.number()};
    auto name = canonical_list_name(v);
    samples.emplace(name, std::move(v));
    return {name, 0};
  }
  ElementRef ref;
  ref.sample = parse_sample(lex, samples);
  lex.expect('[');
  ref.index = lex.index();
  lex.expect(']');
  if (ref.index >= samples.at(ref.sample).size()) {
    lex.fail("index " + std::to_string(ref.index) + " out of range for '" + ref.sample + "'");
  }
  return ref;
}

inline Relation parse_relation(StatementLexer& lex) {
  if (lex.accept('<')) return Relation::kLess;
  if (lex.accept('>')) return Relation::kGreater;
  if (lex.accept('=')) {
    lex.accept('=');
    return Relation::kEqual;
  }
  lex.fail("expected one of '<', '=', '>'");
}

inline Statistic statistic_from_name(const std::string& name, StatementLexer& lex) {
  if (name == "mean") return Statistic::kMean;
  if (name == "median") return Statistic::kMedian;
  if (name == "quantile") return Statistic::kQuantile;
  if (name == "geomean") return Statistic::kGeometricMean;
  if (name == "harmean") return Statistic::kHarmonicMean;
  if (name == "mode") return Statistic::kMode;
  if (name == "diffratio") return Statistic::kDiffRatio;
  lex.fail("unknown statistic '" + name + "'");
}

}  // namespace detail

/// Parses `text`. Named samples must already be in `samples`; inline lists
/// are added to it.
inline Statement parse_statement(std::string_view text, Samples& samples) {
  detail::StatementLexer lex(text);
  Statement st;
  st.statistic = detail::statistic_from_name(lex.identifier(), lex);

  if (st.statistic == Statistic::kDiffRatio) {
    lex.expect('(');
    st.diff[0] = detail::parse_element(lex, samples);
    lex.expect(',');
    st.diff[1] = detail::parse_element(lex, samples);
    lex.expect(';');
    st.diff[2] = detail::parse_element(lex, samples);
    lex.expect(',');
    st.diff[3] = detail::parse_element(lex, samples);
    lex.expect(')');
    st.relation = detail::parse_relation(lex);
    st.target = lex.number();
  } else {
    auto side = [&](std::string& name, double& level) {
      lex.expect('(');
      name = detail::parse_sample(lex, samples);
      if (st.statistic == Statistic::kQuantile) {
        lex.expect(',');
        level = lex.number();
        if (!(level >= 0.0 && level <= 1.0)) lex.fail("quantile level must lie in [0, 1]");
      }
      lex.expect(')');
    };
    double lhs_level = 0.5;
    double rhs_level = 0.5;
    side(st.lhs, lhs_level);
    st.relation = detail::parse_relation(lex);
    const auto rhs_stat = detail::statistic_from_name(lex.identifier(), lex);
    if (rhs_stat != st.statistic) lex.fail("both sides must use the same statistic");
    side(st.rhs, rhs_level);
    if (lhs_level != rhs_level) lex.fail("both sides must use the same quantile level");
    st.quantile_level = lhs_level;
  }
  if (!lex.at_end()) lex.fail("unexpected trailing input");
  return st;
}

/// Reads `name v1 v2 ...` lines; values may also be comma separated.
/// Blank lines and lines starting with '#' are skipped.
inline Samples parse_samples(std::istream& in, const std::string& source = "<samples>") {
  Samples out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (ls >> field) fields.push_back(field);
    if (fields.empty() || fields[0][0] == '#') continue;
    const auto at = source + ":" + std::to_string(line_no) + ": ";
    if (fields.size() < 2) throw InputError(at + "sample '" + fields[0] + "' has no values");
    std::vector<double> values;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double v = 0.0;
      const auto& f = fields[i];
      auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
        throw InputError(at + "'" + f + "' is not a number");
      }
      values.push_back(v);
    }
    if (!out.emplace(fields[0], std::move(values)).second) {
      throw InputError(at + "duplicate sample '" + fields[0] + "'");
    }
  }
  return out;
}

}  // namespace irscale

#endif  // IRSCALE_STATEMENT_PARSER_HPP
