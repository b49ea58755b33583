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

#include "irscale/stats.hpp"

namespace irscale::stats {
namespace {

const std::vector<double> kParis{2, 2, 4, 8, 36};
const std::vector<double> kRome{1, 2, 4, 15, 34};

TEST(Stats, TemperatureSummaries) {
  EXPECT_NEAR(mean(kParis), 10.4, 1e-12);
  EXPECT_NEAR(mean(kRome), 11.2, 1e-12);
  EXPECT_EQ(median(kParis), 4.0);
  EXPECT_EQ(median(kRome), 4.0);
  EXPECT_NEAR(geometric_mean(kParis), 5.40, 0.005);
  EXPECT_NEAR(geometric_mean(kRome), 5.27, 0.005);
}

TEST(Stats, MedianOfEvenLengthInterpolates) {
  const std::vector<double> xs{4, 1, 3, 2};
  EXPECT_EQ(median(xs), 2.5);
  EXPECT_TRUE(quantile_interpolated(xs, 0.5));
  EXPECT_FALSE(quantile_interpolated(kParis, 0.5));
}

TEST(Stats, Quantiles) {
  const std::vector<double> xs{10, 20, 30, 40, 50};
  EXPECT_EQ(quantile(xs, 0.0), 10.0);
  EXPECT_EQ(quantile(xs, 1.0), 50.0);
  EXPECT_EQ(quantile(xs, 0.25), 20.0);
  EXPECT_DOUBLE_EQ(quantile(xs, 0.1), 14.0);
  EXPECT_THROW(quantile(xs, 1.5), InputError);
}

TEST(Stats, HarmonicAndMode) {
  EXPECT_DOUBLE_EQ(harmonic_mean(std::vector<double>{1, 2, 4}), 3.0 / 1.75);
  EXPECT_EQ(mode(std::vector<double>{3, 1, 3, 1, 2}), 1.0);
  EXPECT_EQ(mode(std::vector<double>{3, 3, 2}), 3.0);
}

TEST(Stats, DomainErrors) {
  EXPECT_THROW(mean(std::vector<double>{}), InputError);
  EXPECT_THROW(geometric_mean(std::vector<double>{1, 0}), InputError);
  EXPECT_THROW(harmonic_mean(std::vector<double>{1, -2}), InputError);
}

TEST(KendallTau, IdentityAndReverse) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> rev{5, 4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(kendall_tau_b(x, x), 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau_b(x, rev), -1.0);
}

TEST(KendallTau, TieCorrection) {
  // Pairs: (1,2) tied in x only, (1,3) and (2,3) concordant.
  // tau_b = 2 / sqrt(2 * 3); scipy.stats.kendalltau agrees (0.816496580927726).
  const std::vector<double> x{0.3, 0.3, 0.8};
  const std::vector<double> y{1.5, 1.0, 2.5};
  EXPECT_NEAR(kendall_tau_b(x, y), 2.0 / std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(kendall_tau_b(x, y), 0.816496580927726, 1e-12);
  EXPECT_THROW(kendall_tau_b(std::vector<double>{1, 1}, std::vector<double>{1, 2}),
               DegenerateError);
}

TEST(PairedTTest, MatchesScipy) {
  // scipy.stats.ttest_rel([.5,.5,.5,.5,1], [1/3,1/3,1/3,1/3,0]).pvalue
  const std::vector<double> a{0.5, 0.5, 0.5, 0.5, 1.0};
  const std::vector<double> b{1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0};
  const auto r = paired_t_test(a, b);
  ASSERT_TRUE(r.p_value);
  EXPECT_NEAR(*r.t, 2.0, 1e-12);
  EXPECT_NEAR(*r.p_value, 0.1161165235168155, 1e-12);
}

TEST(PairedTTest, ZeroVarianceIsDegenerate) {
  const std::vector<double> a{1, 2, 3};
  const auto same = paired_t_test(a, a);
  EXPECT_TRUE(same.degenerate());
  EXPECT_FALSE(same.significant(0.05));
  const auto shifted = paired_t_test(a, std::vector<double>{0, 1, 2});
  EXPECT_TRUE(shifted.degenerate());
}

TEST(SignTest, ExactBinomial) {
  const std::vector<double> a{2, 2, 2, 2, 2};
  const std::vector<double> b{1, 1, 1, 1, 1};
  EXPECT_EQ(sign_test(a, b).p_value, 0.0625);
  EXPECT_EQ(sign_test(a, a).p_value, 1.0);
  // 2 positive, 3 negative: 2 * P(X <= 2 | n=5) = 2 * 16/32 -> capped at 1.
  EXPECT_EQ(sign_test(std::vector<double>{1, 1, 0, 0, 0}, std::vector<double>{0, 0, 1, 1, 1})
                .p_value,
            1.0);
  // 1 positive, 4 negative: 2 * 6/32.
  EXPECT_EQ(sign_test(std::vector<double>{1, 0, 0, 0, 0}, std::vector<double>{0, 1, 1, 1, 1})
                .p_value,
            0.375);
}

TEST(SignTest, LargeSampleStaysInRange) {
  std::vector<double> a(3000, 1.0), b(3000, 0.0);
  for (std::size_t i = 0; i < 1400; ++i) b[i] = 2.0;
  const auto r = sign_test(a, b);
  EXPECT_GE(r.p_value, 0.0);
  EXPECT_LE(r.p_value, 1.0);
  EXPECT_LT(r.p_value, 0.01);
}

}  // namespace
}  // namespace irscale::stats
