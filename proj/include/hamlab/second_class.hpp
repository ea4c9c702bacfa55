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

#ifndef HAMLAB_SECOND_CLASS_HPP_
#define HAMLAB_SECOND_CLASS_HPP_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "hamlab/dynamics.hpp"
#include "hamlab/instance.hpp"

namespace hamlab {

enum class TrajectoryStatus : std::uint8_t {
  kAlive,         // inside the box up to t_max
  kExitedEast,    // jumped beyond x_max
  kConsumedWest,  // taken by a sink while the base configuration was empty;
                  // like an East exit, the base particle it swaps with is
                  // beyond x_max
  kAtInfinity,    // no base particle to the right of the start
};

std::string_view to_string(TrajectoryStatus status);

struct Jump {
  double time = 0.0;
  double position = 0.0;

  friend bool operator==(const Jump&, const Jump&) = default;
};

// Right-continuous nondecreasing staircase of a discrepancy started at
// `start`. Jump times and positions are strictly increasing.
struct Trajectory {
  Point start;
  double initial_position = 0.0;  // +inf when AtInfinity
  std::vector<Jump> jumps;
  TrajectoryStatus status = TrajectoryStatus::kAlive;
  double status_time = 0.0;  // exit/consumption time; t_max when alive

  // Position after all events with time <= t; +inf once censored.
  double position_at(double t) const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct MeetingInfo {
  bool met = false;
  double t_star = std::numeric_limits<double>::infinity();
  double position = std::numeric_limits<double>::quiet_NaN();

  friend bool operator==(const MeetingInfo& a, const MeetingInfo& b) {
    return a.met == b.met && (!a.met || (a.t_star == b.t_star && a.position == b.position));
  }
};

// Second class particle X (extra source), dual second class particle X'
// (extra sink) from a common start, and their first meeting.
struct RegionO {
  Trajectory x;
  Trajectory xp;
  MeetingInfo meeting;
  Box box;

  // (px, pt) lies in the region enclosed by the two staircases before the
  // meeting: v <= pt < t*, X(pt) <= px < X'(pt).
  bool contains(double px, double pt) const;

  friend bool operator==(const RegionO&, const RegionO&) = default;
};

// Replays the dynamics once and applies the discrepancy rules against the
// pre-event base configuration. A meeting is the first event after which
// X stands where X' stood just before it.
RegionO trace_pair(const Instance& instance, double u, double v);
RegionO trace_pair(const EventLog& log, double u, double v);

// Oracle for trace_pair: runs the base process, the process with an extra
// particle at u from time v, the process with the particle nearest right of
// u removed at time v, and the process with both changes, all on the
// reference stepper, and reads X and X' off the configuration differences.
// The meeting is the first event at which the doubly perturbed process
// becomes identical to the base process.
RegionO trace_by_coupling(const Instance& instance, double u, double v);

// Integral over [v, min(t*, clip_t)] of (min(X', clip_x) - min(X, clip_x))+.
double enclosed_area(const RegionO& region, double clip_x, double clip_t);

// flux(instance + alpha at (u, v)) - flux(instance) at every grid point.
// The alpha-point is placed with add_alpha, so it may be nudged by an ulp.
std::vector<std::int64_t> flux_delta_region(const Instance& instance, double u, double v,
                                            std::span<const Point> grid);

// Polyline of the staircase inside the box, with collinear and repeated
// vertices removed. A censored trajectory ends on x = x_max, an alive one
// on t = t_max.
std::vector<Point> staircase(const Trajectory& trajectory, const Box& box);

// CSV `kind,time,position,status` with kind X or Xp.
void write_trajectories_csv(std::ostream& out, const RegionO& region);
// CSV `time_from,time_to,x_left,x_right`: horizontal slices of the region.
void write_region_csv(std::ostream& out, const RegionO& region);

}  // namespace hamlab

#endif  // HAMLAB_SECOND_CLASS_HPP_
