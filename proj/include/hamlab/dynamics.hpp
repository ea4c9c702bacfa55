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

#ifndef HAMLAB_DYNAMICS_HPP_
#define HAMLAB_DYNAMICS_HPP_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <set>
#include <span>
#include <vector>

#include "hamlab/instance.hpp"
#include "hamlab/position_set.hpp"

namespace hamlab {

enum class EventKind : std::uint8_t {
  kAlphaJump,    // the nearest particle to the right moved onto the alpha-point
  kAlphaSpawn,   // nothing to the right inside the box; a path enters from East
  kSinkConsume,  // the leftmost particle left through the West boundary
  kSinkNoop,     // empty configuration; the consumed path crosses the box
};

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::kSinkNoop;
  double alpha_x = 0.0;  // alpha events only
  double position = 0.0;  // from-position of a jump, removed particle of a consume

  friend bool operator==(const Event&, const Event&) = default;
};

// Time-ordered record of one run of the dynamics on a box.
class EventLog {
 public:
  EventLog() = default;
  // Throws std::invalid_argument unless event times are strictly
  // increasing and every event lies in the box.
  EventLog(std::vector<double> initial_particles, std::vector<Event> events, Box box);

  std::span<const double> initial_particles() const { return initial_; }
  std::span<const Event> events() const { return events_; }
  const Box& box() const { return box_; }

 private:
  std::vector<double> initial_;
  std::vector<Event> events_;
  Box box_;
};

// Path crossings of the four sides of [0, x] x [0, t].
struct BoundaryCounts {
  std::int64_t north = 0;
  std::int64_t east = 0;
  std::int64_t west = 0;
  std::int64_t south = 0;

  friend bool operator==(const BoundaryCounts&, const BoundaryCounts&) = default;
};

EventLog run_dynamics(const Instance& instance);

// Particles in (0, x] after all events with time <= t.
std::int64_t particle_count(const EventLog& log, double x, double t);
BoundaryCounts boundary_counts(const EventLog& log, double x, double t);
// north + west; throws std::logic_error if south + east differs.
std::int64_t flux(const EventLog& log, double x, double t);

// Sorted particle positions after all events with time <= t.
std::vector<double> configuration_at(const EventLog& log, double t);

// Replays the log on an ordered set; throws std::logic_error on the first
// inconsistency (a jump from an empty position, a consume that is not the
// minimum, a spawn with a particle to its right, ...).
void validate_log(const EventLog& log);

// CSV with header `path_id,x,t`: polyline vertices of every space-time path
// inside the box.
void write_paths_csv(std::ostream& out, const EventLog& log);

// ---------------------------------------------------------------------------
// Sweep engine.

// Particle configuration over a fixed, sorted universe of positions.
class Configuration {
 public:
  static constexpr std::size_t npos = PositionSet::npos;

  Configuration() = default;
  explicit Configuration(std::vector<double> universe)
      : universe_(std::move(universe)), set_(universe_.size()) {}

  std::size_t universe_size() const { return universe_.size(); }
  double position(std::size_t rank) const { return universe_[rank]; }
  std::size_t successor(std::size_t rank) const { return set_.successor(rank); }
  std::size_t first() const { return set_.first(); }
  bool contains(std::size_t rank) const { return set_.contains(rank); }
  std::size_t size() const { return set_.size(); }
  bool empty() const { return set_.empty(); }

  // First universe rank whose position is > x (universe_size() if none).
  std::size_t rank_above(double x) const;
  // Rank of an exact universe position; npos if absent.
  std::size_t rank_of(double x) const;
  // Occupied positions in (lo, hi].
  std::size_t count_in(double lo, double hi) const;
  std::vector<double> particles() const;

  void insert(std::size_t rank) { set_.insert(rank); }
  void erase(std::size_t rank) { set_.erase(rank); }

 private:
  std::vector<double> universe_;
  PositionSet set_;
};

// One event as seen by sweep observers, reported before it is applied.
struct Step {
  Event event;
  std::size_t alpha_rank = Configuration::npos;  // alpha events
  std::size_t moved_rank = Configuration::npos;  // jumper or consumed particle
};

// Universe and ranks for sweeping an instance.
struct SweepPlan {
  std::vector<double> universe;
  std::vector<std::uint32_t> source_ranks;
  std::vector<std::uint32_t> alpha_ranks;  // indexed like instance.alphas()
};
SweepPlan make_sweep_plan(const Instance& instance);

// Runs the dynamics of `instance` up to time `horizon`, calling
// observer.on_step(pre_event_configuration, step) before every event and
// observer.on_finish(final_configuration) at the end.
template <class Observer>
void sweep(const Instance& instance, Observer& observer,
           double horizon = std::numeric_limits<double>::infinity()) {
  SweepPlan plan = make_sweep_plan(instance);
  Configuration config(std::move(plan.universe));
  for (std::uint32_t r : plan.source_ranks) config.insert(r);

  const std::span<const Point> alphas = instance.alphas();
  const std::span<const double> sinks = instance.sinks();
  std::size_t ia = 0;
  std::size_t is = 0;
  for (;;) {
    const bool have_alpha = ia < alphas.size() && alphas[ia].t <= horizon;
    const bool have_sink = is < sinks.size() && sinks[is] <= horizon;
    if (!have_alpha && !have_sink) break;
    Step step;
    if (have_alpha && (!have_sink || alphas[ia].t < sinks[is])) {
      const Point& p = alphas[ia];
      const std::size_t rank = plan.alpha_ranks[ia++];
      const std::size_t right = config.successor(rank);
      step.alpha_rank = rank;
      step.moved_rank = right;
      step.event.time = p.t;
      step.event.alpha_x = p.x;
      if (right != Configuration::npos) {
        step.event.kind = EventKind::kAlphaJump;
        step.event.position = config.position(right);
      } else {
        step.event.kind = EventKind::kAlphaSpawn;
      }
      observer.on_step(config, step);
      if (right != Configuration::npos) config.erase(right);
      config.insert(rank);
    } else {
      const std::size_t leftmost = config.first();
      step.moved_rank = leftmost;
      step.event.time = sinks[is++];
      if (leftmost != Configuration::npos) {
        step.event.kind = EventKind::kSinkConsume;
        step.event.position = config.position(leftmost);
      } else {
        step.event.kind = EventKind::kSinkNoop;
      }
      observer.on_step(config, step);
      if (leftmost != Configuration::npos) config.erase(leftmost);
    }
  }
  observer.on_finish(config);
}

// Replays a recorded log through the same observer interface.
template <class Observer>
void replay(const EventLog& log, Observer& observer);

// Straightforward reference implementation of one step of the dynamics on
// a std::set. Used by the coupling oracle and to cross-check the engine.
class ReferenceStepper {
 public:
  ReferenceStepper() = default;
  explicit ReferenceStepper(std::set<double> particles) : particles_(std::move(particles)) {}

  Event alpha(double a, double s);
  Event sink(double w);
  const std::set<double>& particles() const { return particles_; }
  std::set<double>& particles() { return particles_; }

 private:
  std::set<double> particles_;
};

// Full run on the reference stepper; same contract as run_dynamics.
EventLog run_reference_dynamics(const Instance& instance);

// ---------------------------------------------------------------------------

namespace detail {
Configuration replay_configuration(const EventLog& log);
std::size_t replay_rank(const Configuration& config, double x);
}  // namespace detail

template <class Observer>
void replay(const EventLog& log, Observer& observer) {
  Configuration config = detail::replay_configuration(log);
  for (const Event& e : log.events()) {
    Step step;
    step.event = e;
    switch (e.kind) {
      case EventKind::kAlphaJump:
        step.alpha_rank = detail::replay_rank(config, e.alpha_x);
        step.moved_rank = detail::replay_rank(config, e.position);
        break;
      case EventKind::kAlphaSpawn:
        step.alpha_rank = detail::replay_rank(config, e.alpha_x);
        break;
      case EventKind::kSinkConsume:
        step.moved_rank = detail::replay_rank(config, e.position);
        break;
      case EventKind::kSinkNoop:
        break;
    }
    observer.on_step(config, step);
    if (step.moved_rank != Configuration::npos) config.erase(step.moved_rank);
    if (step.alpha_rank != Configuration::npos) config.insert(step.alpha_rank);
  }
  observer.on_finish(config);
}

}  // namespace hamlab

#endif  // HAMLAB_DYNAMICS_HPP_
