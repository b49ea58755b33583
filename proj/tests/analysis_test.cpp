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

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "irscale/analysis.hpp"

#ifndef IRSCALE_TEST_DATA
#error "IRSCALE_TEST_DATA must point at tests/data"
#endif

namespace irscale {
namespace {

const std::string kData = IRSCALE_TEST_DATA;

trec::Run run_from(const std::string& text) {
  std::istringstream in(text);
  return trec::parse_run(in);
}

trec::Qrels qrels_from(const std::string& text) {
  std::istringstream in(text);
  return trec::parse_qrels(in);
}

bool has_warning(const std::vector<std::string>& ws, const std::string& needle) {
  for (const auto& w : ws) {
    if (w.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST(ScoreRuns, ReciprocalRankCellAndWarnings) {
  const auto q = qrels_from("1 0 d2 1\n1 0 d9 1\n2 0 e1 1\n");
  const auto r = run_from("1 Q0 d1 1 3 S\n1 Q0 d2 2 2 S\n1 Q0 d3 3 1 S\n");
  const auto m = score_runs({r}, q, Measure::reciprocal_rank(), 3);
  ASSERT_EQ(m.topics, (std::vector<std::string>{"1", "2"}));
  ASSERT_TRUE(m.at(0, 0));
  EXPECT_EQ(*m.at(0, 0), 0.5);
  EXPECT_FALSE(m.at(0, 1));
  EXPECT_TRUE(has_warning(m.warnings, "unjudged documents are treated as grade 0"));
  EXPECT_TRUE(has_warning(m.warnings, "no documents for topic 2"));
  EXPECT_EQ(m.coverage(0), 1u);
}

TEST(ScoreRuns, AveragePrecisionWarnsAboutRecallBase) {
  const auto q = qrels_from("1 0 a 1\n1 0 b 1\n2 0 z 0\n");
  const auto r = run_from("1 Q0 a 1 2 S\n1 Q0 x 2 1 S\n2 Q0 z 1 1 S\n");
  const auto m = score_runs({r}, q, Measure::average_precision(), 2);
  EXPECT_TRUE(has_warning(m.warnings, "normalized by RB"));
  EXPECT_TRUE(has_warning(m.warnings, "topic 2: no relevant documents"));
  EXPECT_DOUBLE_EQ(*m.at(0, 0), 0.5);
  EXPECT_FALSE(m.at(0, 1));
}

TEST(ScoreRuns, Errors) {
  const auto q = qrels_from("1 0 a 1\n");
  const auto r = run_from("1 Q0 a 1 2 S\n");
  EXPECT_THROW(score_runs({r, r}, q, Measure::reciprocal_rank(), 3), InputError);
  const auto stray = run_from("7 Q0 a 1 2 S\n");
  EXPECT_THROW(score_runs({stray}, q, Measure::reciprocal_rank(), 3), InputError);
  EXPECT_THROW(score_runs({r}, q, Measure::reciprocal_rank(), 0), InputError);
}

TEST(ScoreRuns, ClampsGradesAboveGmax) {
  const auto q = qrels_from("1 0 a 3\n");
  const auto r = run_from("1 Q0 a 1 2 S\n");
  const auto m = score_runs({r}, q, Measure::rbp(0.5), 2);
  EXPECT_TRUE(has_warning(m.warnings, "clamped"));
  EXPECT_DOUBLE_EQ(*m.at(0, 0), 0.5);
}

TEST(IntervalizeMatrix, ReciprocalRankRanks) {
  ScoreMatrix m({"S"}, {"1", "2", "3"});
  m.measure = "RR";
  m.at(0, 0) = 0.5;
  m.at(0, 1) = 0.0;
  const auto iv = intervalize_matrix(m, Measure::reciprocal_rank(), 3, GradeSet::binary());
  EXPECT_TRUE(iv.intervalized);
  EXPECT_EQ(*iv.at(0, 0), 2.0);
  EXPECT_EQ(*iv.at(0, 1), 0.0);
  EXPECT_FALSE(iv.at(0, 2));

  m.at(0, 2) = 0.4;
  try {
    intervalize_matrix(m, Measure::reciprocal_rank(), 3, GradeSet::binary());
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("mismatch"), std::string::npos);
  }
}

TEST(IntervalizeMatrix, PerTopicMappingsForRecallBaseMeasures) {
  const auto q = qrels_from("1 0 a 1\n2 0 a 1\n2 0 b 1\n2 0 c 1\n");
  const auto r = run_from("1 Q0 a 1 2 S\n2 Q0 a 1 2 S\n2 Q0 x 2 1 S\n");
  const auto raw = score_runs({r}, q, Measure::average_precision(), 2);
  EXPECT_THROW(intervalize_matrix(raw, Measure::average_precision(), 2, GradeSet::binary()),
               InputError);
  const auto iv =
      intervalize_matrix(raw, Measure::average_precision(), 2, GradeSet::binary(), &q);
  // Topic 1 (RB=1, at most one relevant): AP points {0, 1/2, 1}.
  EXPECT_EQ(*iv.at(0, 0), 2.0);
  // Topic 2 (RB=3): AP points {0, 1/6, 1/3, 2/3}; 1/3 is rank 2.
  EXPECT_EQ(*iv.at(0, 1), 2.0);
}

TEST(Compare, IdentityGivesTauOne) {
  ScoreMatrix m({"A", "B", "C"}, {"1", "2"});
  const double v[3][2] = {{0.9, 0.8}, {0.5, 0.4}, {0.1, 0.3}};
  for (int s = 0; s < 3; ++s) {
    for (int t = 0; t < 2; ++t) m.at(s, t) = v[s][t];
  }
  const auto r = compare(m, m, 0.05);
  ASSERT_TRUE(r.kendall_tau);
  EXPECT_DOUBLE_EQ(*r.kendall_tau, 1.0);
  EXPECT_EQ(r.ranking_raw, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_TRUE(r.disagreements.empty());
  EXPECT_EQ(r.agreements, 3u);
}

TEST(Compare, ReversalGivesTauMinusOne) {
  ScoreMatrix raw({"A", "B", "C"}, {"1", "2"});
  ScoreMatrix iv = raw;
  const double v[3] = {0.9, 0.5, 0.1};
  for (int s = 0; s < 3; ++s) {
    for (int t = 0; t < 2; ++t) {
      raw.at(s, t) = v[s];
      iv.at(s, t) = v[2 - s];
    }
  }
  EXPECT_DOUBLE_EQ(*compare(raw, iv, 0.05).kendall_tau, -1.0);
}

TEST(Compare, IdenticalSystemsAreDegenerate) {
  ScoreMatrix m({"A", "B"}, {"1", "2", "3"});
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 3; ++t) m.at(s, t) = 0.25 * t;
  }
  const auto r = compare(m, m, 0.05);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_DOUBLE_EQ(r.pairs[0].sign_raw.p_value, 1.0);
  EXPECT_TRUE(r.pairs[0].t_raw.degenerate());
  EXPECT_FALSE(r.pairs[0].t_raw.significant(0.05));
}

TEST(Compare, Errors) {
  ScoreMatrix one({"A"}, {"1", "2"});
  EXPECT_THROW(compare(one, one, 0.05), DegenerateError);
  ScoreMatrix a({"A", "B"}, {"1", "2"});
  ScoreMatrix b({"A", "C"}, {"1", "2"});
  EXPECT_THROW(compare(a, b, 0.05), InputError);
  EXPECT_THROW(compare(a, a, 1.5), InputError);
}

// Values frozen from tests/oracles/harness_oracle.py (scipy).
TEST(Harness, MatchesOracle) {
  const auto q = trec::parse_qrels_file(kData + "/harness.qrels");
  std::vector<trec::Run> runs;
  for (const char* name : {"sysA", "sysB", "sysC"}) {
    runs.push_back(trec::parse_run_file(kData + "/" + name + ".run"));
  }
  const Measure m = Measure::reciprocal_rank();
  const auto raw = score_runs(runs, q, m, 3);
  const auto iv = intervalize_matrix(raw, m, 3, GradeSet::binary());

  const std::vector<double> raw_a{0.5, 0.5, 0.5, 0.5, 1.0};
  const std::vector<double> iv_c{3, 0, 1, 2, 2};
  for (std::size_t t = 0; t < 5; ++t) {
    EXPECT_DOUBLE_EQ(*raw.at(0, t), raw_a[t]);
    EXPECT_DOUBLE_EQ(*iv.at(2, t), iv_c[t]);
  }

  const auto r = compare(raw, iv, 0.05);
  EXPECT_NEAR(*r.systems[0].mean_raw, 0.6, 1e-12);
  EXPECT_NEAR(*r.systems[1].mean_raw, 0.26666666666666666, 1e-12);
  EXPECT_NEAR(*r.systems[2].mean_raw, 0.46666666666666667, 1e-12);
  EXPECT_NEAR(*r.systems[0].mean_intervalized, 2.2, 1e-12);
  EXPECT_NEAR(*r.systems[1].mean_intervalized, 0.8, 1e-12);
  EXPECT_NEAR(*r.systems[2].mean_intervalized, 1.6, 1e-12);
  EXPECT_DOUBLE_EQ(*r.kendall_tau, 1.0);

  struct Expected {
    double sign, t_raw, t_iv;
  };
  const Expected want[3] = {{0.0625, 0.1161165235168155, 0.02489616346022276},
                            {0.625, 0.5122252586995418, 0.304558784680535},
                            {0.625, 0.32394083099184284, 0.24198153056802083}};
  ASSERT_EQ(r.pairs.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& p = r.pairs[i];
    EXPECT_NEAR(p.sign_raw.p_value, want[i].sign, 1e-12);
    EXPECT_NEAR(p.sign_intervalized.p_value, want[i].sign, 1e-12);
    EXPECT_NEAR(*p.t_raw.p_value, want[i].t_raw, 1e-9);
    EXPECT_NEAR(*p.t_intervalized.p_value, want[i].t_iv, 1e-9);
  }
  ASSERT_EQ(r.disagreements.size(), 1u);
  EXPECT_EQ(r.disagreements[0].a, "sysA");
  EXPECT_EQ(r.disagreements[0].b, "sysB");
  EXPECT_EQ(r.disagreements[0].test, "t-test");
  EXPECT_FALSE(r.disagreements[0].significant_raw);
  EXPECT_TRUE(r.disagreements[0].significant_intervalized);
}

}  // namespace
}  // namespace irscale
