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

#include "hamlab/second_class.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

#include "hamlab/report.hpp"

namespace hamlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_start(const Box& box, double u, double v) {
  if (!(u >= 0.0 && u <= box.x_max && v >= 0.0 && v <= box.t_max)) {
    throw std::invalid_argument("start point (" + format_number(u) + ", " + format_number(v) +
                                ") is outside the box");
  }
}

class PairTracker {
 public:
  PairTracker(double u, double v, const Box& box) : v_(v), box_(box) {
    region_.box = box;
    region_.x.start = {u, v};
    region_.x.initial_position = u;
    region_.xp.start = {u, v};
  }

  void on_step(const Configuration& config, const Step& step) {
    const Event& e = step.event;
    if (!begun_) {
      if (e.time <= v_) return;
      begin(config);
    }
    const double s = e.time;
    const bool xp_was_live = xp_live_;
    const double xp_before = xp_live_ ? config.position(xp_rank_) : kInf;
    bool x_moved = false;

    if (e.kind == EventKind::kAlphaJump || e.kind == EventKind::kAlphaSpawn) {
      const std::size_t b = step.moved_rank;
      if (x_live_ && e.alpha_x < x_) {
        if (b == Configuration::npos) {
          finish(region_.x, TrajectoryStatus::kExitedEast, s);
          x_live_ = false;
        } else if (config.position(b) > x_) {
          x_ = config.position(b);
          region_.x.jumps.push_back({s, x_});
          x_moved = true;
        }
      }
      if (xp_live_ && b == xp_rank_) advance_xp(config, s);
    } else {
      const std::size_t m = step.moved_rank;
      if (x_live_ && (m == Configuration::npos || config.position(m) > x_)) {
        if (m == Configuration::npos) {
          finish(region_.x, TrajectoryStatus::kConsumedWest, s);
          x_live_ = false;
        } else {
          x_ = config.position(m);
          region_.x.jumps.push_back({s, x_});
          x_moved = true;
        }
      }
      if (xp_live_ && m == xp_rank_) advance_xp(config, s);
    }

    if (!region_.meeting.met && xp_was_live && x_moved && x_ >= xp_before) {
      region_.meeting = {true, s, x_};
    }
  }

  void on_finish(const Configuration& config) {
    if (!begun_) begin(config);
    if (x_live_) finish(region_.x, TrajectoryStatus::kAlive, box_.t_max);
    if (xp_live_) finish(region_.xp, TrajectoryStatus::kAlive, box_.t_max);
  }

  RegionO take() { return std::move(region_); }

 private:
  void begin(const Configuration& config) {
    begun_ = true;
    const double u = region_.x.start.x;
    const std::size_t at = config.rank_of(u);
    if (at != Configuration::npos && config.contains(at)) {
      throw std::invalid_argument("start position " + format_number(u) +
                                  " is occupied at the start time");
    }
    x_ = u;
    x_live_ = true;
    const std::size_t above = config.rank_above(u);
    xp_rank_ = above < config.universe_size() ? config.successor(above) : Configuration::npos;
    if (xp_rank_ == Configuration::npos) {
      region_.xp.initial_position = kInf;
      finish(region_.xp, TrajectoryStatus::kAtInfinity, v_);
      xp_live_ = false;
    } else {
      region_.xp.initial_position = config.position(xp_rank_);
      xp_live_ = true;
    }
  }

  void advance_xp(const Configuration& config, double s) {
    const std::size_t next = config.successor(xp_rank_ + 1);
    if (next == Configuration::npos) {
      finish(region_.xp, TrajectoryStatus::kExitedEast, s);
      xp_live_ = false;
      return;
    }
    xp_rank_ = next;
    region_.xp.jumps.push_back({s, config.position(next)});
  }

  static void finish(Trajectory& tr, TrajectoryStatus status, double time) {
    tr.status = status;
    tr.status_time = time;
  }

  double v_;
  Box box_;
  RegionO region_;
  bool begun_ = false;
  double x_ = 0.0;
  bool x_live_ = false;
  std::size_t xp_rank_ = Configuration::npos;
  bool xp_live_ = false;
};

// Single element of a \ b for sets differing by at most one element.
bool lone_difference(const std::set<double>& a, const std::set<double>& b, double* out) {
  std::vector<double> diff;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  if (diff.size() > 1) throw std::logic_error("coupled configurations differ in more than one place");
  if (diff.empty()) return false;
  *out = diff.front();
  return true;
}

}  // namespace

std::string_view to_string(TrajectoryStatus status) {
  switch (status) {
    case TrajectoryStatus::kAlive: return "alive";
    case TrajectoryStatus::kExitedEast: return "exited_east";
    case TrajectoryStatus::kConsumedWest: return "consumed_west";
    case TrajectoryStatus::kAtInfinity: return "at_infinity";
  }
  return "unknown";
}

double Trajectory::position_at(double t) const {
  if (status != TrajectoryStatus::kAlive && t >= status_time) return kInf;
  auto it = std::upper_bound(jumps.begin(), jumps.end(), t,
                             [](double time, const Jump& j) { return time < j.time; });
  return it == jumps.begin() ? initial_position : std::prev(it)->position;
}

bool RegionO::contains(double px, double pt) const {
  if (pt < x.start.t) return false;
  if (meeting.met && pt >= meeting.t_star) return false;
  return x.position_at(pt) <= px && px < xp.position_at(pt);
}

RegionO trace_pair(const Instance& instance, double u, double v) {
  check_start(instance.box(), u, v);
  PairTracker tracker(u, v, instance.box());
  sweep(instance, tracker);
  return tracker.take();
}

RegionO trace_pair(const EventLog& log, double u, double v) {
  check_start(log.box(), u, v);
  PairTracker tracker(u, v, log.box());
  replay(log, tracker);
  return tracker.take();
}

RegionO trace_by_coupling(const Instance& instance, double u, double v) {
  const Box& box = instance.box();
  check_start(box, u, v);

  struct Input {
    double time;
    bool alpha;
    double a;
  };
  std::vector<Input> inputs;
  for (const Point& p : instance.alphas()) inputs.push_back({p.t, true, p.x});
  for (double w : instance.sinks()) inputs.push_back({w, false, 0.0});
  std::sort(inputs.begin(), inputs.end(),
            [](const Input& l, const Input& r) { return l.time < r.time; });

  const std::span<const double> sources = instance.sources();
  ReferenceStepper base(std::set<double>(sources.begin(), sources.end()));
  std::size_t i = 0;
  for (; i < inputs.size() && inputs[i].time <= v; ++i) {
    if (inputs[i].alpha) {
      base.alpha(inputs[i].a, inputs[i].time);
    } else {
      base.sink(inputs[i].time);
    }
  }

  RegionO region;
  region.box = box;
  region.x.start = region.xp.start = {u, v};
  region.x.initial_position = u;

  std::set<double> cfg = base.particles();
  if (cfg.count(u) != 0) throw std::invalid_argument("start position is occupied at the start time");
  ReferenceStepper plus(cfg);
  plus.particles().insert(u);
  ReferenceStepper minus(cfg);
  ReferenceStepper both(plus.particles());
  bool x_live = true;
  bool xp_live = false;
  double x = u;
  double xp = kInf;
  if (auto it = cfg.upper_bound(u); it != cfg.end()) {
    xp = *it;
    xp_live = true;
    region.xp.initial_position = xp;
    minus.particles().erase(xp);
    both.particles().erase(xp);
  } else {
    region.xp.initial_position = kInf;
    region.xp.status = TrajectoryStatus::kAtInfinity;
    region.xp.status_time = v;
  }

  for (; i < inputs.size(); ++i) {
    const Input& in = inputs[i];
    const double s = in.time;
    const bool xp_was_live = xp_live;
    const bool differed = both.particles() != base.particles();
    for (ReferenceStepper* st : {&base, &plus, &minus, &both}) {
      if (in.alpha) {
        st->alpha(in.a, s);
      } else {
        st->sink(s);
      }
    }

    double extra = 0.0;
    double unused = 0.0;
    if (lone_difference(base.particles(), plus.particles(), &unused)) {
      throw std::logic_error("source-perturbed process lost a base particle");
    }
    if (x_live) {
      if (!lone_difference(plus.particles(), base.particles(), &extra)) {
        x_live = false;
        region.x.status = in.alpha ? TrajectoryStatus::kExitedEast : TrajectoryStatus::kConsumedWest;
        region.x.status_time = s;
      } else if (extra != x) {
        x = extra;
        region.x.jumps.push_back({s, x});
      }
    }

    if (lone_difference(minus.particles(), base.particles(), &unused)) {
      throw std::logic_error("sink-perturbed process gained a particle");
    }
    if (xp_live) {
      if (!lone_difference(base.particles(), minus.particles(), &extra)) {
        xp_live = false;
        region.xp.status = TrajectoryStatus::kExitedEast;
        region.xp.status_time = s;
      } else if (extra != xp) {
        xp = extra;
        region.xp.jumps.push_back({s, xp});
      }
    }

    if (!region.meeting.met && xp_was_live && differed &&
        both.particles() == base.particles()) {
      region.meeting = {true, s, x_live ? x : kInf};
    }
  }
  if (x_live) {
    region.x.status = TrajectoryStatus::kAlive;
    region.x.status_time = box.t_max;
  }
  if (xp_live) {
    region.xp.status = TrajectoryStatus::kAlive;
    region.xp.status_time = box.t_max;
  }
  return region;
}

double enclosed_area(const RegionO& region, double clip_x, double clip_t) {
  const double v = region.x.start.t;
  const double end = region.meeting.met ? std::min(region.meeting.t_star, clip_t) : clip_t;
  if (!(end > v)) return 0.0;

  std::vector<double> cuts{v, end};
  for (const Trajectory* tr : {&region.x, &region.xp}) {
    for (const Jump& j : tr->jumps) {
      if (j.time > v && j.time < end) cuts.push_back(j.time);
    }
    if (tr->status_time > v && tr->status_time < end) cuts.push_back(tr->status_time);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double area = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double left = std::min(region.x.position_at(cuts[k]), clip_x);
    const double right = std::min(region.xp.position_at(cuts[k]), clip_x);
    if (right > left) area += (right - left) * (cuts[k + 1] - cuts[k]);
  }
  return area;
}

std::vector<std::int64_t> flux_delta_region(const Instance& instance, double u, double v,
                                            std::span<const Point> grid) {
  const AlphaInsertion inserted = add_alpha(instance, u, v);
  const EventLog base = run_dynamics(instance);
  const EventLog perturbed = run_dynamics(inserted.instance);
  std::vector<std::int64_t> out;
  out.reserve(grid.size());
  for (const Point& p : grid) out.push_back(flux(perturbed, p.x, p.t) - flux(base, p.x, p.t));
  return out;
}

std::vector<Point> staircase(const Trajectory& trajectory, const Box& box) {
  std::vector<Point> pts;
  const Point start = trajectory.start;
  pts.push_back(start);
  double pos = trajectory.initial_position;
  double time = start.t;
  if (trajectory.status == TrajectoryStatus::kAtInfinity) {
    pts.push_back({box.x_max, start.t});
  } else {
    pts.push_back({pos, time});
    for (const Jump& j : trajectory.jumps) {
      pts.push_back({pos, j.time});
      pts.push_back({j.position, j.time});
      pos = j.position;
      time = j.time;
    }
    switch (trajectory.status) {
      case TrajectoryStatus::kAlive:
        pts.push_back({pos, box.t_max});
        break;
      case TrajectoryStatus::kExitedEast:
      case TrajectoryStatus::kConsumedWest:
        pts.push_back({pos, trajectory.status_time});
        pts.push_back({box.x_max, trajectory.status_time});
        break;
      case TrajectoryStatus::kAtInfinity:
        break;
    }
  }

  std::vector<Point> out;
  for (const Point& p : pts) {
    if (!out.empty() && out.back().x == p.x && out.back().t == p.t) continue;
    if (out.size() >= 2) {
      const Point& a = out[out.size() - 2];
      const Point& b = out.back();
      if ((a.x == b.x && b.x == p.x) || (a.t == b.t && b.t == p.t)) {
        out.back() = p;
        continue;
      }
    }
    out.push_back(p);
  }
  return out;
}

void write_trajectories_csv(std::ostream& out, const RegionO& region) {
  out << "kind,time,position,status\n";
  auto emit = [&](std::string_view kind, const Trajectory& tr) {
    out << kind << ',' << format_number(tr.start.t) << ',' << format_number(tr.initial_position)
        << ",start\n";
    for (const Jump& j : tr.jumps) {
      out << kind << ',' << format_number(j.time) << ',' << format_number(j.position) << ",jump\n";
    }
    out << kind << ',' << format_number(tr.status_time) << ','
        << format_number(tr.position_at(tr.status_time)) << ',' << to_string(tr.status) << '\n';
  };
  emit("X", region.x);
  emit("Xp", region.xp);
}

void write_region_csv(std::ostream& out, const RegionO& region) {
  out << "time_from,time_to,x_left,x_right\n";
  const double v = region.x.start.t;
  const double end = region.meeting.met ? region.meeting.t_star : region.box.t_max;
  std::vector<double> cuts{v, end};
  for (const Trajectory* tr : {&region.x, &region.xp}) {
    for (const Jump& j : tr->jumps) {
      if (j.time > v && j.time < end) cuts.push_back(j.time);
    }
    if (tr->status_time > v && tr->status_time < end) cuts.push_back(tr->status_time);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double left = region.x.position_at(cuts[k]);
    const double right = std::min(region.xp.position_at(cuts[k]), region.box.x_max);
    if (!(right > left)) continue;
    out << format_number(cuts[k]) << ',' << format_number(cuts[k + 1]) << ','
        << format_number(left) << ',' << format_number(right) << '\n';
  }
}

}  // namespace hamlab
