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

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hamlab {
namespace {

void check_query(const Box& box, double x, double t, bool open_at_zero) {
  const bool x_ok = open_at_zero ? (x > 0.0) : (x >= 0.0);
  const bool t_ok = open_at_zero ? (t > 0.0) : (t >= 0.0);
  if (!(x_ok && t_ok && x <= box.x_max && t <= box.t_max)) {
    throw std::invalid_argument("query corner outside the box");
  }
}

class LogObserver {
 public:
  explicit LogObserver(std::size_t expected) { events_.reserve(expected); }
  void on_step(const Configuration&, const Step& step) { events_.push_back(step.event); }
  void on_finish(const Configuration&) {}
  std::vector<Event> take() { return std::move(events_); }

 private:
  std::vector<Event> events_;
};

[[noreturn]] void log_error(std::size_t index, const std::string& what) {
  throw std::logic_error("event " + std::to_string(index) + ": " + what);
}

}  // namespace

EventLog::EventLog(std::vector<double> initial_particles, std::vector<Event> events, Box box)
    : initial_(std::move(initial_particles)), events_(std::move(events)), box_(box) {
  validate(box_);
  if (!std::is_sorted(initial_.begin(), initial_.end()) ||
      std::adjacent_find(initial_.begin(), initial_.end()) != initial_.end()) {
    throw std::invalid_argument("initial particles must be strictly increasing");
  }
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const Event& e = events_[i];
    if (!(e.time > 0.0 && e.time <= box_.t_max)) {
      throw std::invalid_argument("event time outside (0, t_max]");
    }
    if (i > 0 && !(events_[i - 1].time < e.time)) {
      throw std::invalid_argument("event times must be strictly increasing");
    }
  }
}

SweepPlan make_sweep_plan(const Instance& inst) {
  const std::span<const double> sources = inst.sources();
  const std::span<const Point> alphas = inst.alphas();
  const std::span<const std::uint32_t> order = inst.alpha_x_order();
  SweepPlan plan;
  plan.universe.resize(sources.size() + alphas.size());
  plan.source_ranks.resize(sources.size());
  plan.alpha_ranks.resize(alphas.size());
  std::size_t s = 0;
  std::size_t k = 0;
  for (std::size_t r = 0; r < plan.universe.size(); ++r) {
    if (k == order.size() || (s < sources.size() && sources[s] < alphas[order[k]].x)) {
      plan.universe[r] = sources[s];
      plan.source_ranks[s++] = static_cast<std::uint32_t>(r);
    } else {
      plan.universe[r] = alphas[order[k]].x;
      plan.alpha_ranks[order[k++]] = static_cast<std::uint32_t>(r);
    }
  }
  return plan;
}

EventLog run_dynamics(const Instance& inst) {
  LogObserver observer(inst.alphas().size() + inst.sinks().size());
  sweep(inst, observer);
  return EventLog(std::vector<double>(inst.sources().begin(), inst.sources().end()),
                  observer.take(), inst.box());
}

std::size_t Configuration::rank_above(double x) const {
  return static_cast<std::size_t>(
      std::upper_bound(universe_.begin(), universe_.end(), x) - universe_.begin());
}

std::size_t Configuration::rank_of(double x) const {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), x);
  if (it == universe_.end() || *it != x) return npos;
  return static_cast<std::size_t>(it - universe_.begin());
}

std::size_t Configuration::count_in(double lo, double hi) const {
  std::size_t n = 0;
  for (std::size_t r = set_.successor(rank_above(lo));
       r != npos && universe_[r] <= hi; r = set_.successor(r + 1)) {
    ++n;
  }
  return n;
}

std::vector<double> Configuration::particles() const {
  std::vector<double> out;
  out.reserve(set_.size());
  for (std::size_t r = set_.first(); r != npos; r = set_.successor(r + 1)) {
    out.push_back(universe_[r]);
  }
  return out;
}

namespace detail {

Configuration replay_configuration(const EventLog& log) {
  std::vector<double> universe(log.initial_particles().begin(), log.initial_particles().end());
  for (const Event& e : log.events()) {
    if (e.kind == EventKind::kAlphaJump || e.kind == EventKind::kAlphaSpawn) {
      universe.push_back(e.alpha_x);
    }
  }
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  Configuration config(std::move(universe));
  for (double p : log.initial_particles()) config.insert(config.rank_of(p));
  return config;
}

std::size_t replay_rank(const Configuration& config, double x) {
  const std::size_t r = config.rank_of(x);
  if (r == Configuration::npos) throw std::logic_error("event log refers to an unknown position");
  return r;
}

}  // namespace detail

std::vector<double> configuration_at(const EventLog& log, double t) {
  Configuration config = detail::replay_configuration(log);
  for (const Event& e : log.events()) {
    if (e.time > t) break;
    if (e.kind == EventKind::kAlphaJump || e.kind == EventKind::kSinkConsume) {
      config.erase(detail::replay_rank(config, e.position));
    }
    if (e.kind == EventKind::kAlphaJump || e.kind == EventKind::kAlphaSpawn) {
      config.insert(detail::replay_rank(config, e.alpha_x));
    }
  }
  return config.particles();
}

std::int64_t particle_count(const EventLog& log, double x, double t) {
  check_query(log.box(), x, t, /*open_at_zero=*/false);
  const std::vector<double> config = configuration_at(log, t);
  return std::upper_bound(config.begin(), config.end(), x) - config.begin();
}

BoundaryCounts boundary_counts(const EventLog& log, double x, double t) {
  check_query(log.box(), x, t, /*open_at_zero=*/true);
  BoundaryCounts c;
  const auto initial = log.initial_particles();
  c.south = std::upper_bound(initial.begin(), initial.end(), x) - initial.begin();
  for (const Event& e : log.events()) {
    if (e.time > t) break;
    switch (e.kind) {
      case EventKind::kAlphaJump:
        if (e.alpha_x <= x && e.position > x) ++c.east;
        break;
      case EventKind::kAlphaSpawn:
        if (e.alpha_x <= x) ++c.east;
        break;
      case EventKind::kSinkConsume:
        ++c.west;
        // The path runs left from the removed particle to the t-axis and so
        // also enters through the East side when it starts beyond x.
        if (e.position > x) ++c.east;
        break;
      case EventKind::kSinkNoop:
        // The consumed particle lives beyond x_max: a horizontal path
        // crosses the whole box.
        ++c.west;
        ++c.east;
        break;
    }
  }
  c.north = particle_count(log, x, t);
  return c;
}

std::int64_t flux(const EventLog& log, double x, double t) {
  const BoundaryCounts c = boundary_counts(log, x, t);
  if (c.south + c.east != c.north + c.west) {
    throw std::logic_error("path conservation violated: south + east != north + west");
  }
  return c.north + c.west;
}

void validate_log(const EventLog& log) {
  std::set<double> config(log.initial_particles().begin(), log.initial_particles().end());
  const auto events = log.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event& e = events[i];
    switch (e.kind) {
      case EventKind::kAlphaJump: {
        if (!(e.position > e.alpha_x)) log_error(i, "jump must move left");
        auto it = config.lower_bound(e.alpha_x);
        if (it == config.end() || *it != e.position) {
          log_error(i, "jumping particle is not the nearest one to the right");
        }
        config.erase(it);
        config.insert(e.alpha_x);
        break;
      }
      case EventKind::kAlphaSpawn:
        if (config.lower_bound(e.alpha_x) != config.end()) {
          log_error(i, "spawn with a particle to the right");
        }
        config.insert(e.alpha_x);
        break;
      case EventKind::kSinkConsume:
        if (config.empty() || *config.begin() != e.position) {
          log_error(i, "consumed particle is not the leftmost one");
        }
        config.erase(config.begin());
        break;
      case EventKind::kSinkNoop:
        if (!config.empty()) log_error(i, "sink no-op with particles present");
        break;
    }
  }
}

void write_paths_csv(std::ostream& out, const EventLog& log) {
  struct Path {
    std::vector<Point> vertices;
  };
  std::vector<Path> paths;
  std::map<double, std::size_t> alive;  // position -> path id
  for (double s : log.initial_particles()) {
    alive.emplace(s, paths.size());
    paths.push_back({{{s, 0.0}}});
  }
  for (const Event& e : log.events()) {
    switch (e.kind) {
      case EventKind::kAlphaJump: {
        auto it = alive.find(e.position);
        const std::size_t id = it->second;
        alive.erase(it);
        paths[id].vertices.push_back({e.position, e.time});
        paths[id].vertices.push_back({e.alpha_x, e.time});
        alive.emplace(e.alpha_x, id);
        break;
      }
      case EventKind::kAlphaSpawn:
        alive.emplace(e.alpha_x, paths.size());
        paths.push_back({{{log.box().x_max, e.time}, {e.alpha_x, e.time}}});
        break;
      case EventKind::kSinkConsume: {
        auto it = alive.find(e.position);
        paths[it->second].vertices.push_back({e.position, e.time});
        paths[it->second].vertices.push_back({0.0, e.time});
        alive.erase(it);
        break;
      }
      case EventKind::kSinkNoop:
        break;
    }
  }
  for (const auto& [pos, id] : alive) paths[id].vertices.push_back({pos, log.box().t_max});

  out << "path_id,x,t\n";
  char buf[96];
  for (std::size_t id = 0; id < paths.size(); ++id) {
    for (const Point& p : paths[id].vertices) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", id, p.x, p.t);
      out << buf;
    }
  }
}

Event ReferenceStepper::alpha(double a, double s) {
  Event e;
  e.time = s;
  e.alpha_x = a;
  auto it = particles_.lower_bound(a);
  if (it != particles_.end()) {
    e.kind = EventKind::kAlphaJump;
    e.position = *it;
    particles_.erase(it);
  } else {
    e.kind = EventKind::kAlphaSpawn;
  }
  particles_.insert(a);
  return e;
}

Event ReferenceStepper::sink(double w) {
  Event e;
  e.time = w;
  if (particles_.empty()) {
    e.kind = EventKind::kSinkNoop;
  } else {
    e.kind = EventKind::kSinkConsume;
    e.position = *particles_.begin();
    particles_.erase(particles_.begin());
  }
  return e;
}

EventLog run_reference_dynamics(const Instance& inst) {
  ReferenceStepper stepper(std::set<double>(inst.sources().begin(), inst.sources().end()));
  std::vector<Event> events;
  const auto alphas = inst.alphas();
  const auto sinks = inst.sinks();
  std::size_t ia = 0, is = 0;
  while (ia < alphas.size() || is < sinks.size()) {
    if (is == sinks.size() || (ia < alphas.size() && alphas[ia].t < sinks[is])) {
      events.push_back(stepper.alpha(alphas[ia].x, alphas[ia].t));
      ++ia;
    } else {
      events.push_back(stepper.sink(sinks[is++]));
    }
  }
  return EventLog(std::vector<double>(inst.sources().begin(), inst.sources().end()),
                  std::move(events), inst.box());
}

}  // namespace hamlab
