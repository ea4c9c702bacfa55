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

#include "hamlab/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "hamlab/dynamics.hpp"
#include "hamlab/experiments.hpp"
#include "hamlab/lpp.hpp"
#include "hamlab/report.hpp"
#include "hamlab/second_class.hpp"

namespace hamlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string at(const Point& p) {
  return "(" + format_number(p.x) + ", " + format_number(p.t) + ")";
}

std::string describe(const Event& e) {
  std::ostringstream out;
  switch (e.kind) {
    case EventKind::kAlphaJump: out << "jump"; break;
    case EventKind::kAlphaSpawn: out << "spawn"; break;
    case EventKind::kSinkConsume: out << "consume"; break;
    case EventKind::kSinkNoop: out << "noop"; break;
  }
  out << "@" << format_number(e.time) << " a=" << format_number(e.alpha_x)
      << " pos=" << format_number(e.position);
  return out.str();
}

std::string describe(const Trajectory& tr) {
  std::ostringstream out;
  out << format_number(tr.initial_position);
  for (const Jump& j : tr.jumps) out << " -> " << format_number(j.position) << "@" << format_number(j.time);
  out << " [" << to_string(tr.status) << "@" << format_number(tr.status_time) << "]";
  return out.str();
}

std::string describe(const RegionO& r) {
  std::string s = "X: " + describe(r.x) + "; X': " + describe(r.xp) + "; ";
  s += r.meeting.met ? "met at " + format_number(r.meeting.t_star) + " pos " +
                           format_number(r.meeting.position)
                     : std::string("not met");
  return s;
}

const Event* event_at(const EventLog& log, double time) {
  const std::span<const Event> events = log.events();
  auto it = std::lower_bound(events.begin(), events.end(), time,
                             [](const Event& e, double t) { return e.time < t; });
  if (it == events.end() || it->time != time) return nullptr;
  return &*it;
}

double just_before(const Trajectory& tr, double time) {
  return tr.position_at(std::nextafter(time, -kInf));
}

// Horizontal extent of the change an event makes to the configuration.
std::pair<double, double> segment(const Event& e, double x_max) {
  switch (e.kind) {
    case EventKind::kAlphaJump: return {e.alpha_x, e.position};
    case EventKind::kAlphaSpawn: return {e.alpha_x, x_max};
    case EventKind::kSinkConsume: return {0.0, e.position};
    case EventKind::kSinkNoop: return {0.0, x_max};
  }
  return {0.0, 0.0};
}

std::vector<Point> swapped(std::vector<Point> pts) {
  for (Point& p : pts) std::swap(p.x, p.t);
  return pts;
}

std::string polyline(std::span<const Point> pts) {
  std::string s;
  for (const Point& p : pts) s += at(p) + " ";
  return s;
}

}  // namespace

std::optional<std::string> check_flux_conservation(const Instance& instance,
                                                   std::span<const Point> grid) {
  const EventLog log = run_dynamics(instance);
  validate_log(log);
  const EventLog reference = run_reference_dynamics(instance);
  if (!std::equal(log.events().begin(), log.events().end(), reference.events().begin(),
                  reference.events().end())) {
    return "sweep engine and reference stepper disagree";
  }
  for (const Point& p : grid) {
    const BoundaryCounts c = boundary_counts(log, p.x, p.t);
    if (c.south + c.east != c.north + c.west) {
      return "conservation fails at " + at(p) + ": south " + std::to_string(c.south) + " east " +
             std::to_string(c.east) + " north " + std::to_string(c.north) + " west " +
             std::to_string(c.west);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_flux_lpp(const Instance& instance, std::span<const Point> grid) {
  const EventLog log = run_dynamics(instance);
  const bool small = instance.total_points() <= kBruteForcePointCap;
  for (const Point& p : grid) {
    const std::int64_t f = flux(log, p.x, p.t);
    const std::int64_t l = flux_lpp(instance, p.x, p.t).length;
    if (f != l) {
      return "flux " + std::to_string(f) + " != chain length " + std::to_string(l) + " at " + at(p);
    }
    if (small) {
      const std::int64_t b = brute_force_flux(instance, p.x, p.t);
      if (b != f) {
        return "flux " + std::to_string(f) + " != enumerated chain length " + std::to_string(b) +
               " at " + at(p);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_trace_oracle(const Instance& instance, double u, double v) {
  const RegionO fast = trace_pair(instance, u, v);
  const RegionO replayed = trace_pair(run_dynamics(instance), u, v);
  const RegionO oracle = trace_by_coupling(instance, u, v);
  if (!(fast == oracle)) {
    return "start " + at({u, v}) + ": tracker {" + describe(fast) + "} vs coupling {" +
           describe(oracle) + "}";
  }
  if (!(fast == replayed)) {
    return "start " + at({u, v}) + ": sweep {" + describe(fast) + "} vs log replay {" +
           describe(replayed) + "}";
  }
  return std::nullopt;
}

std::optional<std::string> check_reflection(const Instance& instance, double u, double v) {
  const Instance transposed = transpose_instance(instance);
  const RegionO direct = trace_pair(instance, u, v);
  const RegionO mirror = trace_pair(transposed, v, u);
  const std::vector<Point> a = staircase(direct.xp, instance.box());
  const std::vector<Point> b = swapped(staircase(mirror.x, transposed.box()));
  if (a != b) {
    return "start " + at({u, v}) + ": X' " + polyline(a) + "vs mirrored X " + polyline(b);
  }
  return std::nullopt;
}

std::optional<std::string> check_path_coincidence(const Instance& instance,
                                                  std::uint64_t mask_seed) {
  Engine engine = make_engine({mask_seed, 0}, Stream::kAuxiliary);
  std::vector<double> kept_sinks;
  for (double w : instance.sinks()) {
    if (engine() & 1u) kept_sinks.push_back(w);
  }
  std::vector<double> kept_sources;
  for (double s : instance.sources()) {
    if (engine() & 1u) kept_sources.push_back(s);
  }
  const std::vector<double> sources(instance.sources().begin(), instance.sources().end());
  const std::vector<double> sinks(instance.sinks().begin(), instance.sinks().end());
  const std::vector<Point> alphas(instance.alphas().begin(), instance.alphas().end());
  const Instance fewer_sinks = Instance::make(sources, kept_sinks, alphas, instance.box());
  const Instance fewer_sources = Instance::make(kept_sources, sinks, alphas, instance.box());

  const EventLog base = run_dynamics(instance);
  const RegionO region = trace_pair(instance, 0.0, 0.0);
  const EventLog no_sinks = run_dynamics(fewer_sinks);
  const EventLog no_sources = run_dynamics(fewer_sources);

  for (const Event& e : base.events()) {
    const bool alpha = e.kind == EventKind::kAlphaJump || e.kind == EventKind::kAlphaSpawn;
    if (alpha && e.alpha_x > just_before(region.x, e.time)) {
      const Event* other = event_at(no_sinks, e.time);
      if (other == nullptr || !(*other == e)) {
        return "event " + describe(e) + " right of X changed after dropping sinks";
      }
    }
    const double xp = just_before(region.xp, e.time);
    bool left_of_xp = false;
    switch (e.kind) {
      case EventKind::kAlphaJump: left_of_xp = e.alpha_x < xp && e.position < xp; break;
      case EventKind::kAlphaSpawn: left_of_xp = e.alpha_x < xp; break;
      case EventKind::kSinkConsume: left_of_xp = e.position < xp; break;
      case EventKind::kSinkNoop: left_of_xp = true; break;
    }
    if (left_of_xp) {
      const Event* other = event_at(no_sources, e.time);
      if (other == nullptr || !(*other == e)) {
        return "event " + describe(e) + " left of X' changed after dropping sources";
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_perturbation_region(const Instance& instance, double u,
                                                     double v, std::span<const Point> grid) {
  const AlphaInsertion inserted = add_alpha(instance, u, v);
  const Point start = inserted.placed;
  const RegionO region = trace_pair(instance, start.x, start.t);
  const std::vector<std::int64_t> delta = flux_delta_region(instance, start.x, start.t, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::int64_t expected = region.contains(grid[i].x, grid[i].t) ? 1 : 0;
    if (delta[i] != expected) {
      return "alpha at " + at(start) + ": flux delta " + std::to_string(delta[i]) + " at " +
             at(grid[i]) + ", region says " + std::to_string(expected) + " {" + describe(region) +
             "}";
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_annihilation(const Instance& instance, double u, double v) {
  const AlphaInsertion inserted = add_alpha(instance, u, v);
  const Point start = inserted.placed;
  const RegionO region = trace_pair(instance, start.x, start.t);
  const EventLog base = run_dynamics(instance);
  const EventLog perturbed = run_dynamics(inserted.instance);
  if (perturbed.events().size() != base.events().size() + 1) {
    return "perturbed log does not have exactly one extra event";
  }
  const double x_max = instance.box().x_max;
  for (const Event& e : base.events()) {
    bool must_match = e.time < start.t || (region.meeting.met && e.time > region.meeting.t_star);
    if (!must_match) {
      const auto [lo, hi] = segment(e, x_max);
      const double left = std::min(just_before(region.x, e.time), region.x.position_at(e.time));
      const double right = region.xp.position_at(e.time);
      must_match = hi < left || lo > right;
    }
    if (!must_match) continue;
    const Event* other = event_at(perturbed, e.time);
    if (other == nullptr || !(*other == e)) {
      return "alpha at " + at(start) + ": event " + describe(e) + " changed to " +
             (other ? describe(*other) : std::string("nothing")) + " {" + describe(region) + "}";
    }
  }
  return std::nullopt;
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckTally& c) { return c.failed == 0 && c.checked > 0; });
}

namespace {

constexpr const char* kCheckNames[] = {
    "flux_conservation", "flux_lpp",   "trace_oracle",        "reflection",
    "path_coincidence",  "annihilation", "perturbation_region",
};
constexpr std::size_t kCheckCount = std::size(kCheckNames);

struct CaseOutcome {
  std::array<std::int64_t, kCheckCount> checked{};
  std::array<std::optional<std::string>, kCheckCount> failure;
};

std::vector<Point> make_grid(const Box& box, Engine& engine) {
  std::vector<Point> grid;
  constexpr int kSide = 6;
  for (int i = 1; i <= kSide; ++i) {
    for (int j = 1; j <= kSide; ++j) {
      grid.push_back({i == kSide ? box.x_max : box.x_max * i / kSide,
                      j == kSide ? box.t_max : box.t_max * j / kSide});
    }
  }
  for (int k = 0; k < 24; ++k) {
    grid.push_back({box.x_max * uniform_open_closed(engine), box.t_max * uniform_open_closed(engine)});
  }
  return grid;
}

CaseOutcome run_case(std::uint64_t seed, std::uint64_t index) {
  Engine engine = make_engine({seed, index}, Stream::kAuxiliary);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * uniform_closed_open(engine); };
  Intensities rates{uniform(0.3, 2.0), uniform(0.3, 2.0), uniform(0.5, 2.0)};
  if (index % 10 == 3) rates.lambda = 0.0;
  if (index % 10 == 7) rates.mu = 0.0;
  const Box box{uniform(2.0, 6.0), uniform(2.0, 6.0)};
  const Instance instance = sample_instance(rates, box, {seed, index});
  const Instance tiny = sample_instance({1.0, 1.0, 1.0}, {1.5, 1.5}, {seed ^ 0x9e3779b97f4a7c15ULL, index});
  const std::vector<Point> grid = make_grid(box, engine);
  const std::vector<Point> tiny_grid = make_grid(tiny.box(), engine);
  const double u = uniform(0.0, box.x_max);
  const double v = uniform(0.0, box.t_max);

  CaseOutcome out;
  auto run = [&](std::size_t k, auto&& fn) {
    ++out.checked[k];
    if (out.failure[k]) return;
    try {
      out.failure[k] = fn();
    } catch (const std::exception& e) {
      out.failure[k] = std::string("exception: ") + e.what();
    }
    if (out.failure[k]) *out.failure[k] = "case " + std::to_string(index) + ": " + *out.failure[k];
  };
  run(0, [&] { return check_flux_conservation(instance, grid); });
  run(0, [&] { return check_flux_conservation(tiny, tiny_grid); });
  run(1, [&] { return check_flux_lpp(instance, grid); });
  run(1, [&] { return check_flux_lpp(tiny, tiny_grid); });
  run(2, [&] { return check_trace_oracle(instance, 0.0, 0.0); });
  run(2, [&] { return check_trace_oracle(instance, u, v); });
  run(3, [&] { return check_reflection(instance, 0.0, 0.0); });
  run(3, [&] { return check_reflection(instance, u, v); });
  run(4, [&] { return check_path_coincidence(instance, seed * 1000003u + index); });
  run(5, [&] { return check_annihilation(instance, u, v); });
  run(6, [&] { return check_perturbation_region(instance, u, v, grid); });
  return out;
}

}  // namespace

VerifyReport run_invariant_suite(std::int64_t cases, std::uint64_t seed, unsigned workers) {
  const std::vector<CaseOutcome> outcomes = run_replications<CaseOutcome>(
      cases, workers, [&](std::uint64_t index) { return run_case(seed, index); });
  VerifyReport report;
  for (std::size_t k = 0; k < kCheckCount; ++k) {
    CheckTally tally;
    tally.name = kCheckNames[k];
    for (const CaseOutcome& o : outcomes) {
      tally.checked += o.checked[k];
      if (o.failure[k]) {
        ++tally.failed;
        if (tally.first_failure.empty()) tally.first_failure = *o.failure[k];
      }
    }
    report.checks.push_back(std::move(tally));
  }
  return report;
}

}  // namespace hamlab
