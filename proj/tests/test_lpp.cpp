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

#include "hamlab/lpp.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

#include "hamlab/dynamics.hpp"

namespace hamlab {
namespace {

const std::vector<Point> kAlphas{{1.0, 1.0}, {2.0, 2.0}, {3.0, 1.5}};

TEST(FluxLpp, NoPoints) {
  const Instance inst = Instance::make({}, {}, {}, {4.0, 3.0});
  EXPECT_EQ(flux_lpp(inst, 4.0, 3.0).length, 0);
  EXPECT_EQ(brute_force_flux(inst, 4.0, 3.0), 0);
}

TEST(FluxLpp, SingleAlpha) {
  const Instance inst = Instance::make({}, {}, {{1.0, 1.0}}, {4.0, 3.0});
  EXPECT_EQ(brute_force_flux(inst, 4.0, 3.0), 1);
  EXPECT_EQ(flux_lpp(inst, 4.0, 3.0).length, 1);
  EXPECT_EQ(flux_lpp(inst, 0.5, 3.0).length, 0);
}

TEST(FluxLpp, PureAlphaChain) {
  const Instance inst = Instance::make({}, {}, kAlphas, {4.0, 3.0});
  EXPECT_EQ(flux_lpp(inst, 4.0, 3.0).length, 2);
  EXPECT_EQ(brute_force_flux(inst, 4.0, 3.0), 2);
}

TEST(FluxLpp, SourcePrefix) {
  const Instance inst = Instance::make({0.5}, {}, kAlphas, {4.0, 3.0});
  const ChainValue v = flux_lpp(inst, 4.0, 3.0, true);
  EXPECT_EQ(v.length, 3);
  EXPECT_EQ(brute_force_flux(inst, 4.0, 3.0), 3);
  ASSERT_EQ(v.witness.size(), 3u);
  EXPECT_EQ(v.witness[0].kind, ChainPointKind::kSource);
  EXPECT_EQ(flux(run_dynamics(inst), 4.0, 3.0), 3);
}

TEST(FluxLpp, SourcesAndSinksAreIncomparable) {
  const Instance inst = Instance::make({1.0, 2.0}, {1.0, 2.0, 2.5}, {}, {4.0, 3.0});
  EXPECT_EQ(flux_lpp(inst, 4.0, 3.0).length, 3);
  EXPECT_EQ(brute_force_flux(inst, 4.0, 3.0), 3);
}

TEST(FluxLpp, OutOfBoxRejected) {
  const Instance inst = Instance::make({}, {}, kAlphas, {4.0, 3.0});
  EXPECT_THROW(flux_lpp(inst, 5.0, 1.0), std::invalid_argument);
  EXPECT_THROW(brute_force_flux(inst, 1.0, 4.0), std::invalid_argument);
}

TEST(BruteForce, RejectsLargeInstances) {
  std::vector<Point> alphas;
  for (int i = 1; i <= 21; ++i) alphas.push_back({0.1 * i, 0.1 * i});
  const Instance inst = Instance::make({}, {}, alphas, {4.0, 3.0});
  EXPECT_THROW(brute_force_flux(inst, 4.0, 3.0), std::invalid_argument);
  EXPECT_EQ(flux_lpp(inst, 4.0, 3.0).length, 21);
}

void expect_valid_witness(const Instance& inst, const ChainValue& v, double x, double t) {
  ASSERT_EQ(static_cast<std::int64_t>(v.witness.size()), v.length);
  bool seen_alpha = false;
  ChainPointKind prefix = ChainPointKind::kAlpha;
  for (std::size_t i = 0; i < v.witness.size(); ++i) {
    const ChainPoint& c = v.witness[i];
    EXPECT_LE(c.point.x, x);
    EXPECT_LE(c.point.t, t);
    if (c.kind == ChainPointKind::kAlpha) {
      seen_alpha = true;
    } else {
      EXPECT_FALSE(seen_alpha);
      if (prefix == ChainPointKind::kAlpha) prefix = c.kind;
      EXPECT_EQ(c.kind, prefix);
    }
    if (i > 0) {
      const Point& p = v.witness[i - 1].point;
      EXPECT_TRUE(p.x < c.point.x || c.kind == ChainPointKind::kSink);
      EXPECT_TRUE(p.t < c.point.t || c.kind == ChainPointKind::kSource);
    }
  }
  (void)inst;
}

TEST(FluxLpp, AgreesWithDynamicsAndBruteForce) {
  int brute_checked = 0;
  for (std::uint64_t rep = 0; rep < 300; ++rep) {
    const Instance inst = sample_instance({0.8, 0.8, 1.5}, {3.0, 3.0}, {55, rep});
    const EventLog log = run_dynamics(inst);
    for (int i = 1; i <= 6; ++i) {
      for (int j = 1; j <= 6; ++j) {
        const double x = 0.5 * i, t = 0.5 * j;
        const ChainValue v = flux_lpp(inst, x, t, true);
        ASSERT_EQ(v.length, flux(log, x, t)) << "rep " << rep << " at " << x << "," << t;
        ASSERT_EQ(flux_lpp(inst, x, t).length, v.length);
        expect_valid_witness(inst, v, x, t);
        if (inst.total_points() <= kBruteForcePointCap) {
          ASSERT_EQ(brute_force_flux(inst, x, t), v.length);
          ++brute_checked;
        }
      }
    }
  }
  EXPECT_GT(brute_checked, 1000);
}

}  // namespace
}  // namespace hamlab
