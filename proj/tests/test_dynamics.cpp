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

#include "hamlab/dynamics.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <stdexcept>
#include <vector>

namespace hamlab {
namespace {

Instance three_alpha() {
  return Instance::make({0.5}, {}, {{1.0, 1.0}, {3.0, 1.5}, {2.0, 2.0}}, {4.0, 3.0});
}

Instance one_sink() { return Instance::make({2.0}, {1.0}, {}, {5.0, 3.0}); }

Event alpha_event(double time, EventKind kind, double a, double from = 0.0) {
  Event e;
  e.time = time;
  e.kind = kind;
  e.alpha_x = a;
  e.position = from;
  return e;
}

TEST(RunDynamics, EmptyInstance) {
  const EventLog log = run_dynamics(Instance::make({}, {}, {}, {2.0, 2.0}));
  EXPECT_TRUE(log.initial_particles().empty());
  EXPECT_TRUE(log.events().empty());
  EXPECT_EQ(particle_count(log, 1.0, 1.0), 0);
  EXPECT_EQ(boundary_counts(log, 1.0, 1.0), (BoundaryCounts{}));
  EXPECT_EQ(flux(log, 2.0, 2.0), 0);
}

TEST(RunDynamics, ThreeAlphaExample) {
  const EventLog log = run_dynamics(three_alpha());
  const std::vector<Event> expected{
      alpha_event(1.0, EventKind::kAlphaSpawn, 1.0),
      alpha_event(1.5, EventKind::kAlphaSpawn, 3.0),
      alpha_event(2.0, EventKind::kAlphaJump, 2.0, 3.0),
  };
  EXPECT_EQ(std::vector<Event>(log.events().begin(), log.events().end()), expected);
  EXPECT_EQ(configuration_at(log, 3.0), (std::vector<double>{0.5, 1.0, 2.0}));
  EXPECT_EQ(configuration_at(log, 1.7), (std::vector<double>{0.5, 1.0, 3.0}));
  EXPECT_EQ(particle_count(log, 4.0, 3.0), 3);
  EXPECT_EQ(particle_count(log, 0.4, 3.0), 0);
  EXPECT_EQ(boundary_counts(log, 4.0, 3.0), (BoundaryCounts{3, 2, 0, 1}));
  EXPECT_EQ(flux(log, 4.0, 3.0), 3);
}

TEST(RunDynamics, SinkConsumesLeftmost) {
  const EventLog log = run_dynamics(one_sink());
  ASSERT_EQ(log.events().size(), 1u);
  EXPECT_EQ(log.events()[0].kind, EventKind::kSinkConsume);
  EXPECT_EQ(log.events()[0].position, 2.0);
  EXPECT_TRUE(configuration_at(log, 3.0).empty());
  EXPECT_EQ(boundary_counts(log, 5.0, 3.0), (BoundaryCounts{0, 0, 1, 1}));
  EXPECT_EQ(flux(log, 5.0, 3.0), 1);
}

TEST(RunDynamics, SinkOnEmptyConfigurationCrossesTheBox) {
  const EventLog log = run_dynamics(Instance::make({}, {1.0}, {}, {2.0, 2.0}));
  ASSERT_EQ(log.events().size(), 1u);
  EXPECT_EQ(log.events()[0].kind, EventKind::kSinkNoop);
  EXPECT_EQ(boundary_counts(log, 1.0, 1.5), (BoundaryCounts{0, 1, 1, 0}));
  EXPECT_EQ(flux(log, 1.0, 1.5), 1);
  EXPECT_EQ(flux(log, 1.0, 0.5), 0);
}

TEST(RunDynamics, EastCountsPathsCrossingTheVerticalLine) {
  const EventLog log = run_dynamics(three_alpha());
  // At x = 2.5 the jump from 3 to 2 crosses; the spawn at 3 does not.
  EXPECT_EQ(boundary_counts(log, 2.5, 3.0), (BoundaryCounts{3, 2, 0, 1}));
  EXPECT_EQ(boundary_counts(log, 1.5, 3.0), (BoundaryCounts{2, 1, 0, 1}));
}

TEST(RunDynamics, OutOfBoxQueriesRejected) {
  const EventLog log = run_dynamics(three_alpha());
  EXPECT_THROW(particle_count(log, 4.5, 1.0), std::invalid_argument);
  EXPECT_THROW(boundary_counts(log, 1.0, -1.0), std::invalid_argument);
  EXPECT_THROW(flux(log, 1.0, 3.5), std::invalid_argument);
}

TEST(EventLog, RejectsUnorderedEvents) {
  std::vector<Event> events{alpha_event(2.0, EventKind::kAlphaSpawn, 1.0),
                            alpha_event(1.0, EventKind::kAlphaSpawn, 2.0)};
  EXPECT_THROW(EventLog({}, events, {3.0, 3.0}), std::invalid_argument);
  EXPECT_THROW(EventLog({}, {alpha_event(4.0, EventKind::kAlphaSpawn, 1.0)}, {3.0, 3.0}),
               std::invalid_argument);
}

TEST(ValidateLog, DetectsInconsistentReplay) {
  validate_log(run_dynamics(three_alpha()));
  const EventLog bad({0.5}, {alpha_event(1.0, EventKind::kAlphaJump, 0.2, 0.7)}, {4.0, 3.0});
  EXPECT_THROW(validate_log(bad), std::logic_error);
  Event consume;
  consume.time = 1.0;
  consume.kind = EventKind::kSinkConsume;
  consume.position = 2.0;
  const EventLog not_min({0.5, 2.0}, {consume}, {4.0, 3.0});
  EXPECT_THROW(validate_log(not_min), std::logic_error);
}

TEST(RunDynamics, MatchesReferenceOnRandomInstances) {
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    const Instance inst = sample_instance({1.5, 1.0, 3.0}, {6.0, 5.0}, {21, rep});
    const EventLog fast = run_dynamics(inst);
    const EventLog ref = run_reference_dynamics(inst);
    ASSERT_TRUE(std::equal(fast.events().begin(), fast.events().end(), ref.events().begin(),
                           ref.events().end()))
        << "rep " << rep;
    validate_log(fast);
  }
}

TEST(RunDynamics, ConservationAndMonotonicityOnGrid) {
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    const Instance inst = sample_instance({1.0, 1.0, 2.0}, {5.0, 5.0}, {33, rep});
    const EventLog log = run_dynamics(inst);
    for (int i = 1; i <= 10; ++i) {
      for (int j = 1; j <= 10; ++j) {
        const double x = 0.5 * i, t = 0.5 * j;
        const BoundaryCounts c = boundary_counts(log, x, t);
        EXPECT_EQ(c.south + c.east, c.north + c.west);
        const std::int64_t f = flux(log, x, t);
        if (i > 1) {
          EXPECT_LE(flux(log, x - 0.5, t), f);
        }
        if (j > 1) {
          EXPECT_LE(flux(log, x, t - 0.5), f);
        }
      }
    }
  }
}

TEST(RunDynamics, RestrictionToSmallerBoxGivesSameFlux) {
  for (std::uint64_t rep = 0; rep < 30; ++rep) {
    const Instance big = sample_instance({1.0, 1.0, 2.0}, {8.0, 8.0}, {44, rep});
    const Instance small = restrict_instance(big, {4.0, 4.0});
    const EventLog lb = run_dynamics(big);
    const EventLog ls = run_dynamics(small);
    for (double x : {1.0, 2.5, 4.0}) {
      for (double t : {1.0, 2.5, 4.0}) {
        EXPECT_EQ(flux(lb, x, t), flux(ls, x, t));
        EXPECT_EQ(particle_count(lb, x, t), particle_count(ls, x, t));
      }
    }
  }
}

TEST(RunDynamics, ParticlesOnlyMoveLeft) {
  const EventLog log = run_dynamics(sample_instance({1.0, 1.0, 3.0}, {5.0, 5.0}, {2, 2}));
  for (const Event& e : log.events()) {
    if (e.kind == EventKind::kAlphaJump) {
      EXPECT_LT(e.alpha_x, e.position);
    }
  }
}

TEST(WritePathsCsv, ListsPolylines) {
  std::ostringstream out;
  write_paths_csv(out, run_dynamics(one_sink()));
  EXPECT_EQ(out.str(), "path_id,x,t\n0,2,0\n0,2,1\n0,0,1\n");
}

}  // namespace
}  // namespace hamlab
