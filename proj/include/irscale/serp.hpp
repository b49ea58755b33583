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

#ifndef IRSCALE_SERP_HPP
#define IRSCALE_SERP_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "irscale/error.hpp"

namespace irscale {

/// A relevance grade. 0 is not relevant; anything above 0 counts as relevant
/// for binary measures.
using Grade = int;

/// Sorted, duplicate-free set of grades. Always contains 0.
class GradeSet {
 public:
  GradeSet() : grades_{0, 1} {}

  explicit GradeSet(std::vector<Grade> grades) : grades_(std::move(grades)) {
    std::sort(grades_.begin(), grades_.end());
    grades_.erase(std::unique(grades_.begin(), grades_.end()), grades_.end());
    if (grades_.empty()) throw InputError("grade set is empty");
    if (grades_.front() != 0) {
      throw InputError(grades_.front() < 0 ? "grade set contains negative grade"
                                           : "grade set must contain 0");
    }
  }

  GradeSet(std::initializer_list<Grade> grades)
      : GradeSet(std::vector<Grade>(grades)) {}

  static GradeSet binary() { return GradeSet{0, 1}; }

  /// {0, 1, ..., g_max}.
  static GradeSet up_to(Grade g_max) {
    if (g_max < 1) throw InputError("g_max must be >= 1");
    std::vector<Grade> grades(static_cast<std::size_t>(g_max) + 1);
    for (std::size_t i = 0; i < grades.size(); ++i) grades[i] = static_cast<Grade>(i);
    return GradeSet(std::move(grades));
  }

  std::size_t size() const noexcept { return grades_.size(); }
  Grade operator[](std::size_t i) const { return grades_[i]; }
  Grade max() const noexcept { return grades_.back(); }
  bool contains(Grade g) const {
    return std::binary_search(grades_.begin(), grades_.end(), g);
  }
  std::span<const Grade> values() const noexcept { return grades_; }

  friend bool operator==(const GradeSet&, const GradeSet&) = default;

 private:
  std::vector<Grade> grades_;
};

/// A ranked list of relevance grades. Position 1 is the top of the list.
struct Serp {
  std::vector<Grade> grades;

  Serp() = default;
  explicit Serp(std::vector<Grade> g) : grades(std::move(g)) {}
  Serp(std::initializer_list<Grade> g) : grades(g) {}

  std::size_t size() const noexcept { return grades.size(); }
  Grade operator[](std::size_t i) const { return grades[i]; }
  operator std::span<const Grade>() const noexcept { return grades; }

  friend bool operator==(const Serp&, const Serp&) = default;
  friend auto operator<=>(const Serp&, const Serp&) = default;
};

/// Per-topic information needed by recall-base dependent measures.
struct TopicContext {
  std::string topic_id;
  int recall_base = 1;  // number of documents with grade > 0
  Grade g_max = 1;

  void validate() const {
    if (recall_base < 1) {
      throw InputError("topic '" + topic_id + "': recall base must be >= 1");
    }
    if (g_max < 1) throw InputError("topic '" + topic_id + "': g_max must be >= 1");
  }
};

inline constexpr std::uint64_t kDefaultUniverseCap = std::uint64_t{1} << 24;

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  if (b > std::numeric_limits<std::uint64_t>::max() - a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a + b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out = saturating_mul(out, base);
  return out;
}

inline std::uint64_t binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  // Exact for the sizes that survive the universe cap; saturates otherwise.
  unsigned __int128 out = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    out = out * (n - r + i) / i;
    if (out > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(out);
}

}  // namespace detail

/// Counts SERPs of length k over `grades`, optionally keeping only those with
/// at most `max_relevant` non-zero grades. Saturates at UINT64_MAX.
inline std::uint64_t raw_universe_count(std::size_t k, const GradeSet& grades,
                                        std::optional<std::size_t> max_relevant) {
  if (!max_relevant || *max_relevant >= k) {
    return detail::saturating_pow(grades.size(), k);
  }
  const std::uint64_t nonzero = grades.size() - 1;
  std::uint64_t total = 0;
  for (std::size_t j = 0; j <= *max_relevant; ++j) {
    total = detail::saturating_add(
        total, detail::saturating_mul(detail::binomial(k, j),
                                      detail::saturating_pow(nonzero, j)));
  }
  return total;
}

/// All SERPs of a fixed length over a grade set, streamed lazily in
/// lexicographic grade order (position 1 most significant).
///
/// In RB-constrained mode only SERPs with at most `max_relevant` documents of
/// grade > 0 are produced. Iteration keeps O(k) state and never materializes
/// the universe; each begin() call starts an independent stream.
class SerpUniverse {
 public:
  SerpUniverse(std::size_t k, GradeSet grades,
               std::optional<std::size_t> max_relevant = std::nullopt,
               std::uint64_t cap = kDefaultUniverseCap)
      : k_(k), grades_(std::move(grades)), max_relevant_(max_relevant), cap_(cap) {
    if (k_ < 1) throw InputError("SERP length k must be >= 1");
    count_ = raw_universe_count(k_, grades_, max_relevant_);
    if (count_ > cap_) {
      throw SizeLimitError("universe of " + std::to_string(grades_.size()) + "^" +
                           std::to_string(k_) + " SERPs" +
                           (max_relevant_ ? " (RB cap " +
                                                std::to_string(*max_relevant_) + ")"
                                          : std::string()) +
                           " exceeds the cap of " + std::to_string(cap_));
    }
  }

  std::size_t k() const noexcept { return k_; }
  const GradeSet& grades() const noexcept { return grades_; }
  std::optional<std::size_t> max_relevant() const noexcept { return max_relevant_; }
  std::uint64_t cap() const noexcept { return cap_; }
  std::uint64_t count() const noexcept { return count_; }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Serp;
    using difference_type = std::ptrdiff_t;
    using reference = const Serp&;
    using pointer = const Serp*;

    iterator() = default;

    reference operator*() const { return serp_; }
    pointer operator->() const { return &serp_; }

    iterator& operator++() {
      advance();
      return *this;
    }
    void operator++(int) { advance(); }

    friend bool operator==(const iterator& it, std::default_sentinel_t) {
      return it.done_;
    }

   private:
    friend class SerpUniverse;

    explicit iterator(const SerpUniverse* u)
        : universe_(u), index_(u->k_, 0), serp_(std::vector<Grade>(u->k_, 0)) {}

    void advance() {
      const auto& grades = universe_->grades_;
      const auto cap = universe_->max_relevant_;
      // Non-zero grades strictly before position j.
      std::size_t prefix = 0;
      for (std::size_t v : index_) prefix += v != 0;
      for (std::size_t j = index_.size(); j-- > 0;) {
        prefix -= index_[j] != 0;
        if (index_[j] + 1 < grades.size() && (!cap || prefix + 1 <= *cap)) {
          ++index_[j];
          serp_.grades[j] = grades[index_[j]];
          for (std::size_t t = j + 1; t < index_.size(); ++t) {
            index_[t] = 0;
            serp_.grades[t] = grades[0];
          }
          return;
        }
      }
      done_ = true;
    }

    const SerpUniverse* universe_ = nullptr;
    std::vector<std::size_t> index_;
    Serp serp_;
    bool done_ = true;
  };

  iterator begin() const {
    iterator it(this);
    it.done_ = false;
    return it;
  }
  std::default_sentinel_t end() const noexcept { return {}; }

 private:
  std::size_t k_;
  GradeSet grades_;
  std::optional<std::size_t> max_relevant_;
  std::uint64_t cap_;
  std::uint64_t count_ = 0;
};

/// Lazy stream over the universe; throws SizeLimitError above `cap`.
inline SerpUniverse enumerate_universe(std::size_t k, const GradeSet& grades,
                                       std::optional<std::size_t> max_relevant = {},
                                       std::uint64_t cap = kDefaultUniverseCap) {
  return SerpUniverse(k, grades, max_relevant, cap);
}

inline std::uint64_t count_universe(std::size_t k, const GradeSet& grades,
                                    std::optional<std::size_t> max_relevant = {},
                                    std::uint64_t cap = kDefaultUniverseCap) {
  return SerpUniverse(k, grades, max_relevant, cap).count();
}

/// Number of documents with grade > 0.
inline std::size_t relevant_count(std::span<const Grade> serp) {
  return static_cast<std::size_t>(
      std::count_if(serp.begin(), serp.end(), [](Grade g) { return g > 0; }));
}

}  // namespace irscale

#endif  // IRSCALE_SERP_HPP
