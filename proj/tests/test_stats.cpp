// Copyright 2026 The hamlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hamlab/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace hamlab {
namespace {

TEST(Summarize, SmallSample) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const Summary s = summarize(v);
  EXPECT_EQ(s.n, 4u);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.variance, 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.std_error, std::sqrt(5.0 / 12.0));
}

TEST(Summarize, DegenerateSamples) {
  EXPECT_EQ(summarize(std::vector<double>{}).n, 0u);
  const Summary one = summarize(std::vector<double>{7.0});
  EXPECT_EQ(one.mean, 7.0);
  EXPECT_EQ(one.std_error, 0.0);
}

TEST(Covariance, OfSampleWithItselfIsVariance) {
  const std::vector<double> v{1.0, 3.0, 2.0, 8.0, 5.0};
  EXPECT_DOUBLE_EQ(covariance(v, v).covariance, summarize(v).variance);
  const std::vector<double> w{5.0, 3.0, 4.0, -2.0, 1.0};
  EXPECT_DOUBLE_EQ(covariance(v, w).covariance, -summarize(v).variance);
  EXPECT_THROW(covariance(v, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(Dispersion, PoissonSampleIsNearOne) {
  std::mt19937_64 rng(5);
  std::poisson_distribution<int> pois(6.0);
  std::vector<double> counts(20000);
  for (double& c : counts) c = pois(rng);
  const DispersionEstimate d = dispersion(counts);
  EXPECT_NEAR(d.index, 1.0, 4.0 * d.std_error);
  EXPECT_GT(d.std_error, 0.0);
  EXPECT_LT(d.std_error, 0.05);
}

TEST(Dispersion, ConstantCountsAndErrors) {
  EXPECT_DOUBLE_EQ(dispersion(std::vector<double>{3.0, 3.0, 3.0}).index, 0.0);
  EXPECT_THROW(dispersion(std::vector<double>{0.0, 0.0}), std::invalid_argument);
}

}  // namespace
}  // namespace hamlab
