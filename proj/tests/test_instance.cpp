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

#include "hamlab/instance.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hamlab/stats.hpp"

namespace hamlab {
namespace {

TEST(SampleInstance, ZeroIntensityGivesEmptyInstance) {
  const Instance inst = sample_instance({0.0, 0.0, 0.0}, {10.0, 10.0}, {123, 4});
  EXPECT_TRUE(inst.sources().empty());
  EXPECT_TRUE(inst.sinks().empty());
  EXPECT_TRUE(inst.alphas().empty());
}

TEST(SampleInstance, SourceCountsArePoisson) {
  std::vector<double> counts;
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    counts.push_back(static_cast<double>(
        sample_instance({2.0, 0.0, 0.0}, {1000.0, 1.0}, {99, rep}).sources().size()));
  }
  const Summary s = summarize(counts);
  EXPECT_LE(std::abs(s.mean - 2000.0), 4.0 * s.std_error);
  const double index = dispersion(counts).index;
  EXPECT_GE(index, 0.8);
  EXPECT_LE(index, 1.2);
}

TEST(SampleInstance, AlphaCountsMatchIntensity) {
  std::vector<double> counts;
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    counts.push_back(static_cast<double>(
        sample_instance({0.0, 0.0, 1.0}, {50.0, 50.0}, {5, rep}).alphas().size()));
  }
  const Summary s = summarize(counts);
  EXPECT_LE(std::abs(s.mean - 2500.0), 4.0 * s.std_error);
}

TEST(SampleInstance, DisjointCellsAreIndependentPoisson) {
  constexpr int kCells = 4;
  std::vector<std::vector<double>> cells(kCells);
  for (std::uint64_t rep = 0; rep < 400; ++rep) {
    const Instance inst = sample_instance({1.0, 0.0, 1.0}, {8.0, 8.0}, {17, rep});
    std::vector<double> c(kCells, 0.0);
    for (const Point& p : inst.alphas()) {
      c[static_cast<int>(p.x / 2.0 - 1e-12) % kCells] += 1.0;
    }
    for (int k = 0; k < kCells; ++k) cells[k].push_back(c[k]);
  }
  for (int k = 0; k < kCells; ++k) {
    const double index = dispersion(cells[k]).index;
    EXPECT_GE(index, 0.8) << "cell " << k;
    EXPECT_LE(index, 1.2) << "cell " << k;
    for (int j = k + 1; j < kCells; ++j) {
      const CovarianceEstimate cov = covariance(cells[k], cells[j]);
      EXPECT_LE(std::abs(cov.covariance), 4.0 * cov.std_error) << "cells " << k << "," << j;
    }
  }
}

TEST(SampleInstance, DeterministicGivenSeed) {
  const Intensities rates{1.5, 0.7, 2.0};
  const Box box{7.0, 9.0};
  EXPECT_EQ(sample_instance(rates, box, {8, 3}), sample_instance(rates, box, {8, 3}));
  EXPECT_FALSE(sample_instance(rates, box, {8, 3}) == sample_instance(rates, box, {8, 4}));
}

TEST(SampleInstance, SatisfiesInstanceInvariants) {
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const Instance inst = sample_instance({3.0, 3.0, 40.0}, {4.0, 4.0}, {1, rep});
    const std::vector<double> sources(inst.sources().begin(), inst.sources().end());
    const std::vector<double> sinks(inst.sinks().begin(), inst.sinks().end());
    const std::vector<Point> alphas(inst.alphas().begin(), inst.alphas().end());
    EXPECT_NO_THROW(Instance::make(sources, sinks, alphas, inst.box()));
    for (std::size_t i = 1; i < alphas.size(); ++i) EXPECT_LT(alphas[i - 1].t, alphas[i].t);
  }
}

TEST(SampleInstance, RejectsInvalidInputs) {
  EXPECT_THROW(sample_instance({-1.0, 0.0, 0.0}, {1.0, 1.0}, {}), std::invalid_argument);
  EXPECT_THROW(sample_instance({NAN, 0.0, 0.0}, {1.0, 1.0}, {}), std::invalid_argument);
  EXPECT_THROW(sample_instance({1.0, 1.0, 1.0}, {INFINITY, 1.0}, {}), std::invalid_argument);
  EXPECT_THROW(sample_instance({1.0, 1.0, 1.0}, {1.0, 0.0}, {}), std::invalid_argument);
}

TEST(Instance, MakeSortsAndValidates) {
  const Instance inst = Instance::make({3.0, 1.0}, {2.0}, {{1.5, 2.5}, {0.5, 0.5}}, {4.0, 5.0});
  EXPECT_EQ(std::vector<double>(inst.sources().begin(), inst.sources().end()),
            (std::vector<double>{1.0, 3.0}));
  EXPECT_EQ(inst.alphas()[0], (Point{0.5, 0.5}));
  EXPECT_THROW(Instance::make({1.0, 1.0}, {}, {}, {4.0, 5.0}), std::invalid_argument);
  EXPECT_THROW(Instance::make({}, {}, {{1.0, 1.0}, {1.0, 2.0}}, {4.0, 5.0}), std::invalid_argument);
  EXPECT_THROW(Instance::make({}, {}, {{1.0, 1.0}, {2.0, 1.0}}, {4.0, 5.0}), std::invalid_argument);
  EXPECT_THROW(Instance::make({}, {1.0}, {{2.0, 1.0}}, {4.0, 5.0}), std::invalid_argument);
  EXPECT_THROW(Instance::make({2.0}, {}, {{2.0, 1.0}}, {4.0, 5.0}), std::invalid_argument);
  EXPECT_THROW(Instance::make({5.0}, {}, {}, {4.0, 5.0}), std::invalid_argument);
  EXPECT_THROW(Instance::make({}, {}, {{0.0, 1.0}}, {4.0, 5.0}), std::invalid_argument);
}

TEST(TransposeInstance, Empty) {
  const Instance inst = Instance::make({}, {}, {}, {2.0, 3.0});
  const Instance tr = transpose_instance(inst);
  EXPECT_TRUE(tr.sources().empty());
  EXPECT_TRUE(tr.sinks().empty());
  EXPECT_TRUE(tr.alphas().empty());
  EXPECT_EQ(tr.box(), (Box{3.0, 2.0}));
}

TEST(TransposeInstance, SwapsCoordinates) {
  const Instance inst = Instance::make({1.0, 3.0}, {2.0}, {{1.5, 2.5}}, {4.0, 5.0}, {0.5, 2.0, 1.0});
  const Instance tr = transpose_instance(inst);
  EXPECT_EQ(std::vector<double>(tr.sources().begin(), tr.sources().end()), (std::vector<double>{2.0}));
  EXPECT_EQ(std::vector<double>(tr.sinks().begin(), tr.sinks().end()),
            (std::vector<double>{1.0, 3.0}));
  ASSERT_EQ(tr.alphas().size(), 1u);
  EXPECT_EQ(tr.alphas()[0], (Point{2.5, 1.5}));
  EXPECT_EQ(tr.box(), (Box{5.0, 4.0}));
  EXPECT_EQ(tr.intensities(), (Intensities{2.0, 0.5, 1.0}));
}

TEST(TransposeInstance, IsAnInvolutionPreservingCounts) {
  for (std::uint64_t rep = 0; rep < 30; ++rep) {
    const Instance inst = sample_instance({1.0, 2.0, 5.0}, {3.0, 2.0}, {11, rep});
    const Instance tr = transpose_instance(inst);
    EXPECT_EQ(tr.total_points(), inst.total_points());
    EXPECT_EQ(transpose_instance(tr), inst);
    // Canonical form: same as building the transposed instance from scratch.
    const std::vector<double> s(tr.sources().begin(), tr.sources().end());
    const std::vector<double> w(tr.sinks().begin(), tr.sinks().end());
    const std::vector<Point> a(tr.alphas().begin(), tr.alphas().end());
    const Instance rebuilt = Instance::make(s, w, a, tr.box(), tr.intensities(), tr.seed());
    EXPECT_EQ(rebuilt, tr);
    EXPECT_TRUE(std::equal(rebuilt.alpha_x_order().begin(), rebuilt.alpha_x_order().end(),
                           tr.alpha_x_order().begin(), tr.alpha_x_order().end()));
  }
}

TEST(AddAlpha, ToEmptyInstance) {
  const AlphaInsertion r = add_alpha(Instance::make({}, {}, {}, {3.0, 3.0}), 1.0, 1.0);
  ASSERT_EQ(r.instance.alphas().size(), 1u);
  EXPECT_EQ(r.instance.alphas()[0], (Point{1.0, 1.0}));
  EXPECT_FALSE(r.nudged);
  EXPECT_EQ(r.instance.nudged_points(), 0u);
}

TEST(AddAlpha, KeepsOtherFields) {
  const Instance inst = Instance::make({0.5}, {0.7}, {{1.0, 2.0}}, {3.0, 3.0}, {1, 1, 1}, {5, 6});
  const AlphaInsertion r = add_alpha(inst, 2.0, 1.0);
  EXPECT_EQ(std::vector<Point>(r.instance.alphas().begin(), r.instance.alphas().end()),
            (std::vector<Point>{{2.0, 1.0}, {1.0, 2.0}}));
  EXPECT_EQ(r.instance.seed(), inst.seed());
  EXPECT_EQ(r.instance.intensities(), inst.intensities());
  EXPECT_EQ(r.instance.box(), inst.box());
  EXPECT_EQ(r.instance.sources()[0], 0.5);
}

TEST(AddAlpha, NudgesOccupiedCoordinateByOneStep) {
  const Instance inst = Instance::make({}, {}, {{1.0, 2.0}}, {3.0, 3.0});
  const AlphaInsertion r = add_alpha(inst, 1.0, 1.0);
  EXPECT_TRUE(r.nudged);
  EXPECT_EQ(r.placed.x, std::nextafter(1.0, 2.0));
  EXPECT_EQ(r.placed.t, 1.0);
  EXPECT_EQ(r.instance.nudged_points(), 1u);
}

TEST(AddAlpha, RejectsPointsOutsideOpenBox) {
  const Instance inst = Instance::make({}, {}, {}, {3.0, 3.0});
  EXPECT_THROW(add_alpha(inst, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(add_alpha(inst, 1.0, 3.0), std::invalid_argument);
  EXPECT_THROW(add_alpha(inst, 4.0, 1.0), std::invalid_argument);
}

TEST(RestrictInstance, KeepsPointsInsideSmallerBox) {
  const Instance inst = Instance::make({1.0, 3.0}, {0.5, 2.5}, {{0.5, 1.0}, {2.5, 0.7}}, {4.0, 4.0});
  const Instance r = restrict_instance(inst, {2.0, 2.0});
  EXPECT_EQ(r.sources().size(), 1u);
  EXPECT_EQ(r.sinks().size(), 1u);
  EXPECT_EQ(r.alphas().size(), 1u);
  EXPECT_THROW(restrict_instance(inst, {5.0, 1.0}), std::invalid_argument);
}

}  // namespace
}  // namespace hamlab
