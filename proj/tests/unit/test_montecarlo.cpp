// Copyright 2026 The cavitybell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cavitybell/montecarlo.hpp"

namespace cavitybell {
namespace {

constexpr double pi = std::numbers::pi;
const Complex kSinglet{0.0, -1.0};

TEST(Estimate, SingletPerfectlyAnticorrelatedAtZero) {
  const CorrelationEstimate e = estimate_correlation(source_from_alpha(kSinglet), 0.0, 100000, 1, FailurePolicy::discard);
  EXPECT_NEAR(e.e_hat, -1.0, 1e-12);
  EXPECT_EQ(e.std_err, 0.0);
  EXPECT_EQ(e.n_used(), 100000);
}

TEST(Estimate, ProductGroundStateUncorrelated) {
  for (double vt : {0.0, 0.7, 2.0}) {
    const CorrelationEstimate e = estimate_correlation(source_from_alpha({0.0, 0.0}), vt, 100000, 2, FailurePolicy::discard);
    EXPECT_LE(std::abs(e.e_hat), 3.0 * e.std_err) << vt;
  }
}

TEST(Estimate, MatchesAnalyticForTargetFamily) {
  for (Complex a : {Complex{0.0, -1.0}, Complex{0.6, 0.0}, std::polar(0.8, 1.1)}) {
    const CorrelationEstimate e = estimate_correlation(source_from_alpha(a), pi / 4.0, 100000, 3, FailurePolicy::discard);
    EXPECT_LE(std::abs(e.e_hat - correlation_analytic(a, pi / 4.0)), 3.0 * e.std_err) << a;
  }
}

TEST(Estimate, ShelvingSamplingMatchesBornRule) {
  const PreparedSource src = source_from_alpha(std::polar(0.7, 0.4));
  const double vt = 0.9;
  const std::array<double, 4> p = measurement_probabilities(src.atoms, vt);
  const CorrelationEstimate e = estimate_correlation(src, vt, 100000, 4, FailurePolicy::discard);
  const double born = p[0] - p[1] - p[2] + p[3];
  EXPECT_LE(std::abs(e.e_hat - born), 3.0 * e.std_err);
  EXPECT_NEAR(born, correlation_expectation(src.atoms, vt, 0.0), 1e-12);
}

TEST(Estimate, IndependentOfJobs) {
  const PreparedSource src = source_from_alpha(std::polar(0.9, 0.2), 0.8);
  const CorrelationEstimate a = estimate_correlation(src, 0.5, 20001, 9, FailurePolicy::include_as_zero, 1);
  const CorrelationEstimate b = estimate_correlation(src, 0.5, 20001, 9, FailurePolicy::include_as_zero, 4);
  EXPECT_EQ(a.e_hat, b.e_hat);
  EXPECT_EQ(a.std_err, b.std_err);
  EXPECT_EQ(a.n_discarded, b.n_discarded);
}

TEST(Estimate, StdErrShrinksAsRootN) {
  const PreparedSource src = source_from_alpha(std::polar(0.8, 0.0));
  const CorrelationEstimate small = estimate_correlation(src, 0.6, 10000, 5, FailurePolicy::discard);
  const CorrelationEstimate big = estimate_correlation(src, 0.6, 160000, 5, FailurePolicy::discard);
  EXPECT_NEAR(big.std_err / small.std_err, 0.25, 0.02);
}

TEST(Estimate, DiscardRecoversIdealStatistics) {
  const PreparedSource src = source_from_alpha(kSinglet, 0.3);
  const CorrelationEstimate e = estimate_correlation(src, pi / 4.0, 100000, 6, FailurePolicy::discard);
  EXPECT_NEAR(e.n_discarded / 100000.0, 0.7, 0.01);
  EXPECT_LE(std::abs(e.e_hat + std::cos(pi / 4.0)), 3.0 * e.std_err);
}

TEST(Estimate, RejectsZeroRuns) {
  EXPECT_THROW(estimate_correlation(source_from_alpha(kSinglet), 0.0, 0, 1, FailurePolicy::discard), std::invalid_argument);
}

TEST(BellEstimate, IdealViolation) {
  const BellEstimate b = estimate_bell(source_from_alpha(kSinglet), pi / 4.0, 100000, 7, FailurePolicy::discard);
  EXPECT_LE(std::abs(b.b_hat - 2.0 * std::sqrt(2.0)), 3.0 * b.std_err);
  EXPECT_GT(b.b_hat - 3.0 * b.std_err, 2.0);
}

TEST(BellEstimate, NoEntanglementNoSignal) {
  const BellEstimate b = estimate_bell(source_from_alpha({0.0, 0.0}), pi / 4.0, 100000, 8, FailurePolicy::discard);
  EXPECT_LE(b.b_hat, 3.0 * b.std_err);
}

TEST(BellEstimate, UndetectedFailuresDilute) {
  const BellEstimate b = estimate_bell(source_from_alpha(kSinglet, 0.6), pi / 4.0, 100000, 9, FailurePolicy::include_as_zero);
  const double expect = observed_bell_with_failures(0.6, 2.0 * std::sqrt(2.0));
  EXPECT_LE(std::abs(b.b_hat - expect), 3.0 * b.std_err);
  EXPECT_LT(b.b_hat, 2.0);
}

TEST(Pipeline, TwoLevelPreparationFeedsEstimate) {
  PipelineSetup s;
  s.two_level.omega1 = 0.01;
  s.two_level.omega2 = -0.01;
  const PreparedSource src = prepare_source(s);
  EXPECT_GT(src.p0, 0.98);
  const CorrelationEstimate e = estimate_correlation(src, pi / 4.0, 100000, 10, FailurePolicy::discard);
  EXPECT_LE(std::abs(e.e_hat - correlation_analytic(src.alpha_realized, pi / 4.0)), 3.0 * e.std_err);
}

TEST(Pipeline, FourLevelSource) {
  PipelineSetup s;
  s.model = Model::four_level;
  const PreparedSource src = prepare_source(s);
  EXPECT_GT(src.p0, 0.99);
  EXPECT_NEAR(std::abs(src.alpha_realized), 1.0, 1e-2);
}

}  // namespace
}  // namespace cavitybell
