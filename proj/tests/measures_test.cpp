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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "irscale/measures.hpp"
#include "oracle.hpp"

namespace irscale {
namespace {

TopicContext ctx_with_rb(int rb, Grade g_max = 1) { return TopicContext{"t", rb, g_max}; }

TEST(Measures, ReciprocalRank) {
  EXPECT_DOUBLE_EQ(eval_measure(Measure::reciprocal_rank(), Serp{0, 0, 1}).value, 1.0 / 3.0);
  EXPECT_EQ(eval_measure(Measure::reciprocal_rank(), Serp{0, 0, 0}).value, 0.0);
  auto at2 = Measure::reciprocal_rank();
  at2.cutoff = 2;
  EXPECT_EQ(eval_measure(at2, Serp{0, 0, 1}).value, 0.0);
}

TEST(Measures, RbpTwoTermGeometricSum) {
  EXPECT_EQ(eval_measure(Measure::rbp(0.5), Serp{1, 1, 0}).value, 0.75);
}

TEST(Measures, AveragePrecisionMatchesOracle) {
  // (1/2) * (1/1 + 2/3) = 5/6.
  const double expected = oracle::ap({1, 0, 1}, 2);
  EXPECT_DOUBLE_EQ(expected, 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(eval_measure(Measure::average_precision(), Serp{1, 0, 1}, ctx_with_rb(2)).value,
                   expected);
}

TEST(Measures, PrecisionUsesCutoffAsDenominator) {
  EXPECT_DOUBLE_EQ(eval_measure(Measure::precision(3), Serp{1, 0, 1, 1}).value, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(eval_measure(Measure::precision(4), Serp{1, 1}).value, 0.5);
}

TEST(Measures, NdcgIdealUsesMinOfRecallBaseAndDepth) {
  // RB = 1: ideal is a single top-grade document at rank 1.
  EXPECT_DOUBLE_EQ(eval_measure(Measure::ndcg(), Serp{0, 1, 0}, ctx_with_rb(1)).value,
                   1.0 / std::log2(3.0));
  // RB larger than k is capped by k.
  EXPECT_DOUBLE_EQ(eval_measure(Measure::ndcg(), Serp{1, 1}, ctx_with_rb(10)).value, 1.0);
}

TEST(Measures, ErrBinary) {
  // R = 1/2 for a relevant binary document.
  EXPECT_DOUBLE_EQ(eval_measure(Measure::err(), Serp{1, 1}).value, 0.5 + 0.5 * 0.5 / 2.0);
}

TEST(Measures, DcgIsRawSum) {
  EXPECT_DOUBLE_EQ(eval_measure(Measure::dcg(2), Serp{2, 0, 1}).value, 3.0 + 1.0 / 2.0);
  auto linear = Measure::dcg(2);
  linear.gain = GainFunction::kLinear;
  EXPECT_DOUBLE_EQ(eval_measure(linear, Serp{2, 0, 1}).value, 2.0 + 1.0 / 2.0);
}

TEST(Measures, ErrorPaths) {
  EXPECT_THROW(eval_measure(Measure::average_precision(), Serp{1}), InputError);
  EXPECT_THROW(eval_measure(Measure::ndcg(), Serp{1}), InputError);
  EXPECT_THROW(eval_measure(Measure::average_precision(), Serp{1}, ctx_with_rb(0)),
               DegenerateError);
  EXPECT_THROW(eval_measure(Measure::ndcg(), Serp{1}, ctx_with_rb(0)), DegenerateError);
  // More relevant documents retrieved than the topic has.
  EXPECT_THROW(eval_measure(Measure::average_precision(), Serp{1, 1}, ctx_with_rb(1)),
               InputError);
  EXPECT_THROW(eval_measure(Measure::rbp(1.0), Serp{1}), InputError);
  EXPECT_THROW(eval_measure(Measure::rbp(0.0), Serp{1}), InputError);
  EXPECT_THROW(eval_measure(Measure::rbp(0.5), Serp{2}), InputError);  // grade > g_max
}

TEST(Measures, RecallBaseDependence) {
  EXPECT_TRUE(rb_dependence_report(Measure::average_precision()).dependent);
  EXPECT_NE(rb_dependence_report(Measure::average_precision()).explanation.find("normalized by RB"),
            std::string::npos);
  EXPECT_TRUE(rb_dependence_report(Measure::ndcg()).dependent);
  EXPECT_FALSE(rb_dependence_report(Measure::rbp(0.5)).dependent);
  EXPECT_FALSE(rb_dependence_report(Measure::precision(5)).dependent);
  EXPECT_FALSE(rb_dependence_report(Measure::reciprocal_rank()).dependent);
  EXPECT_FALSE(rb_dependence_report(Measure::err()).dependent);
  for (auto m : {Measure::precision(3), Measure::reciprocal_rank(), Measure::average_precision(),
                 Measure::dcg(), Measure::ndcg(), Measure::rbp(0.5), Measure::err()}) {
    EXPECT_EQ(rb_dependence_report(m).dependent, m.rb_dependent()) << m.name();
  }
}

TEST(Measures, NamesAndParsing) {
  EXPECT_EQ(Measure::rbp(0.5).name(), "RBP(0.5)");
  EXPECT_EQ(Measure::precision(10).name(), "P@10");
  EXPECT_EQ(measure_from_name("NDCG", 0.5, 5, 2).name(), "nDCG@5");
  EXPECT_THROW(measure_from_name("map", 0.5, 5, 1), InputError);
  EXPECT_THROW(measure_from_name("p", 0.5, std::nullopt, 1), InputError);
}

TEST(Measures, AgreeWithOracleOverGradedUniverses) {
  for (std::size_t k = 1; k <= 5; ++k) {
    for (int g_max : {1, 2, 3}) {
      std::vector<int> grades;
      for (int g = 0; g <= g_max; ++g) grades.push_back(g);
      const auto rb = static_cast<int>(k);
      const TopicContext ctx = ctx_with_rb(rb, g_max);
      for (const auto& s : oracle::universe(k, grades)) {
        const Serp serp(s);
        EXPECT_NEAR(measure_value(Measure::rbp(0.8, g_max), serp), oracle::rbp(s, 0.8, g_max),
                    1e-12);
        EXPECT_NEAR(measure_value(Measure::err(g_max), serp), oracle::err(s, g_max), 1e-12);
        EXPECT_NEAR(measure_value(Measure::dcg(g_max), serp), oracle::dcg(s), 1e-12);
        EXPECT_NEAR(measure_value(Measure::ndcg(g_max), serp, &ctx), oracle::ndcg(s, rb, g_max),
                    1e-12);
        auto graded = [g_max](Measure m) {
          m.g_max = g_max;
          return m;
        };
        EXPECT_NEAR(measure_value(graded(Measure::average_precision()), serp, &ctx),
                    oracle::ap(s, rb), 1e-12);
        EXPECT_EQ(measure_value(graded(Measure::reciprocal_rank()), serp), oracle::rr(s));
        EXPECT_NEAR(measure_value(graded(Measure::precision(k)), serp),
                    oracle::precision_at(s, k), 1e-15);
      }
    }
  }
}

std::vector<Measure> bounded_measures(std::size_t k) {
  return {Measure::precision(k), Measure::reciprocal_rank(), Measure::average_precision(),
          Measure::ndcg(),       Measure::rbp(0.5),          Measure::rbp(0.9),
          Measure::err()};
}

TEST(Measures, ScoresInUnitIntervalExhaustively) {
  for (std::size_t k = 1; k <= 8; ++k) {
    const TopicContext ctx = ctx_with_rb(static_cast<int>(k));
    for (const auto& m : bounded_measures(k)) {
      for (const Serp& s : SerpUniverse(k, GradeSet::binary())) {
        const double v = measure_value(m, s, &ctx);
        ASSERT_GE(v, 0.0) << m.name();
        ASSERT_LE(v, 1.0) << m.name();
      }
    }
  }
}

TEST(Measures, AddingRelevanceNeverDecreasesScore) {
  for (std::size_t k = 1; k <= 6; ++k) {
    const TopicContext ctx = ctx_with_rb(static_cast<int>(k));
    for (const auto& m : {Measure::precision(k), Measure::average_precision(), Measure::rbp(0.5),
                          Measure::ndcg(), Measure::err()}) {
      for (const Serp& s : SerpUniverse(k, GradeSet::binary())) {
        for (std::size_t i = 0; i < k; ++i) {
          if (s[i] != 0) continue;
          Serp up = s;
          up.grades[i] = 1;
          ASSERT_GE(measure_value(m, up, &ctx), measure_value(m, s, &ctx))
              << m.name() << " position " << i;
        }
      }
    }
  }
}

TEST(Measures, RbpHalfHitsEveryDyadicRational) {
  for (std::size_t k = 1; k <= 10; ++k) {
    const double scale = std::ldexp(1.0, static_cast<int>(k));
    std::vector<bool> hit(std::size_t{1} << k, false);
    for (const Serp& s : SerpUniverse(k, GradeSet::binary())) {
      const double v = measure_value(Measure::rbp(0.5), s) * scale;
      ASSERT_EQ(v, std::floor(v));
      hit.at(static_cast<std::size_t>(v)) = true;
    }
    for (bool h : hit) EXPECT_TRUE(h);
  }
}

}  // namespace
}  // namespace irscale
