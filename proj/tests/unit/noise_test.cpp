// Copyright 2026 The wplan Authors
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


#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "support/stats.hpp"
#include "wplan/noise/noise.hpp"

namespace wplan::noise {
namespace {

TEST(SampleGaussian, MeanAndVarianceOfMillionDraws) {
  RandomStream rng(0);
  const auto samples = sample_gaussian(rng, 1000, 100, 10);
  double sum = 0.0;
  double sq = 0.0;
  for (const auto& m : samples) {
    sum += m.sum();
    sq += m.squaredNorm();
  }
  const double n = 1e6;
  const double mean = sum / n;
  EXPECT_GE(mean, -0.005);
  EXPECT_LE(mean, 0.005);
  const double var = sq / n - mean * mean;
  EXPECT_GE(var, 0.99);
  EXPECT_LE(var, 1.01);
}

TEST(SampleGaussian, SameSeedIdenticalTensors) {
  RandomStream a(3);
  RandomStream b(3);
  const auto x = sample_gaussian(a, 4, 5, 2);
  const auto y = sample_gaussian(b, 4, 5, 2);
  ASSERT_EQ(x.size(), 4u);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i].rows(), 5);
    EXPECT_EQ(x[i].cols(), 2);
    EXPECT_EQ(x[i], y[i]);
  }
}

TEST(SampleColored, WhiteNoiseHasNoLagOneCorrelation) {
  RandomStream rng(1);
  const auto samples = sample_colored(rng, {.beta = 0.0, .horizon = 64, .dims = 1}, 10000);
  const double r = testing::mean_lag1_autocorrelation(samples);
  EXPECT_GE(r, -0.02);
  EXPECT_LE(r, 0.02);
}

TEST(SampleColored, ColumnsHaveUnitVariance) {
  RandomStream rng(2);
  for (const auto& m : sample_colored(rng, {.beta = 1.5, .horizon = 32, .dims = 3}, 5)) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Eigen::VectorXd x = m.col(c).array() - m.col(c).mean();
      EXPECT_NEAR(x.squaredNorm() / 32.0, 1.0, 1e-9);
    }
  }
}

TEST(SampleColored, PowerLawSlopeMatchesBeta) {
  RandomStream rng(4);
  const auto samples = sample_colored(rng, {.beta = 1.0, .horizon = 256, .dims = 1}, 2000);
  EXPECT_NEAR(testing::psd_log_log_slope(samples), -1.0, 0.2);
}

TEST(SampleColored, Deterministic) {
  RandomStream a(8);
  RandomStream b(8);
  const ColoredNoiseSpec spec{.beta = 2.0, .horizon = 16, .dims = 2};
  const auto x = sample_colored(a, spec, 3);
  const auto y = sample_colored(b, spec, 3);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i], y[i]);
}

TEST(SampleColored, RejectsZeroHorizon) {
  RandomStream rng(0);
  EXPECT_THROW(sample_colored(rng, {.beta = 1.0, .horizon = 0, .dims = 1}, 1), ContractError);
}

TEST(GumbelMax, DegenerateDistributionAlwaysPicksSupport) {
  RandomStream rng(0);
  const std::vector<double> probs{1.0, 0.0, 0.0};
  for (int s : gumbel_max_sample(rng, probs, 1000)) EXPECT_EQ(s, 0);
}

TEST(GumbelMax, FairCoinFrequency) {
  RandomStream rng(5);
  const std::vector<double> probs{0.5, 0.5};
  long zeros = 0;
  for (int s : gumbel_max_sample(rng, probs, 100000)) zeros += s == 0;
  const double freq = static_cast<double>(zeros) / 1e5;
  EXPECT_GE(freq, 0.49);
  EXPECT_LE(freq, 0.51);
}

TEST(GumbelMax, ScalingProbabilitiesKeepsSamples) {
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  std::vector<double> p3;
  for (double v : p) p3.push_back(3.0 * v);
  RandomStream a(6);
  RandomStream b(6);
  EXPECT_EQ(gumbel_max_sample(a, p, 5000), gumbel_max_sample(b, p3, 5000));
}

TEST(GumbelMax, RejectsInvalidProbabilities) {
  RandomStream rng(0);
  const std::vector<double> zeros{0.0, 0.0};
  const std::vector<double> negative{0.5, -0.1};
  EXPECT_THROW(gumbel_max_sample(rng, zeros, 1), ContractError);
  EXPECT_THROW(gumbel_max_sample(rng, negative, 1), ContractError);
}

}  // namespace
}  // namespace wplan::noise
