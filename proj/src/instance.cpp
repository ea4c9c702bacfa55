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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hamlab/bucket_order.hpp"

namespace hamlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

// Sorted values in (0, upper], strictly increasing.
void canonicalize_axis(std::vector<double>& values, double upper,
                       const char* name) {
  for (double v : values) {
    require(std::isfinite(v) && v > 0.0 && v <= upper,
            std::string(name) + " coordinate outside (0, extent]");
  }
  std::sort(values.begin(), values.end());
  require(std::adjacent_find(values.begin(), values.end()) == values.end(),
          std::string("duplicate ") + name + " coordinate");
}

std::uint64_t poisson_count(Engine& engine, double mean) {
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<std::int64_t> dist(mean);
  return static_cast<std::uint64_t>(dist(engine));
}

// Strictly increasing Poisson points on (0, upper].
std::vector<double> sample_axis(Engine& engine, double intensity, double upper) {
  std::vector<double> out(poisson_count(engine, intensity * upper));
  for (double& v : out) v = upper * uniform_open_closed(engine);
  std::sort(out.begin(), out.end());
  for (;;) {
    bool clean = true;
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (out[i] == out[i - 1]) {
        out[i] = upper * uniform_open_closed(engine);
        clean = false;
      }
    }
    if (clean) return out;
    std::sort(out.begin(), out.end());
  }
}

// Indices (in t-order) of alphas whose x collides with another alpha or a
// source, given the x-order.
std::vector<std::size_t> x_collisions(std::span<const Point> alphas,
                                      std::span<const std::uint32_t> x_order,
                                      std::span<const double> sources) {
  std::vector<std::size_t> bad;
  std::size_t s = 0;
  for (std::size_t k = 0; k < x_order.size(); ++k) {
    const double x = alphas[x_order[k]].x;
    if (k > 0 && alphas[x_order[k - 1]].x == x) bad.push_back(x_order[k]);
    while (s < sources.size() && sources[s] < x) ++s;
    if (s < sources.size() && sources[s] == x) bad.push_back(x_order[k]);
  }
  return bad;
}

// Indices of alphas whose t collides with the previous alpha or a sink.
std::vector<std::size_t> t_collisions(std::span<const Point> alphas,
                                      std::span<const double> sinks) {
  std::vector<std::size_t> bad;
  std::size_t w = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double t = alphas[i].t;
    if (i > 0 && alphas[i - 1].t == t) bad.push_back(i);
    while (w < sinks.size() && sinks[w] < t) ++w;
    if (w < sinks.size() && sinks[w] == t) bad.push_back(i);
  }
  return bad;
}

std::vector<std::uint32_t> order_alphas_by_x(std::span<const Point> alphas,
                                             double x_max) {
  std::vector<double> xs(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) xs[i] = alphas[i].x;
  return bucket_order(xs, x_max);
}

}  // namespace

void validate(const Intensities& in) {
  require(finite_nonnegative(in.lambda) && finite_nonnegative(in.mu) &&
              finite_nonnegative(in.nu),
          "intensities must be finite and nonnegative");
}

void validate(const Box& box) {
  require(std::isfinite(box.x_max) && std::isfinite(box.t_max) &&
              box.x_max > 0.0 && box.t_max > 0.0,
          "box extents must be finite and positive");
}

Instance Instance::make(std::vector<double> sources, std::vector<double> sinks,
                        std::vector<Point> alphas, Box box,
                        Intensities intensities, Seed seed) {
  validate(box);
  validate(intensities);
  canonicalize_axis(sources, box.x_max, "source");
  canonicalize_axis(sinks, box.t_max, "sink");
  for (const Point& p : alphas) {
    require(std::isfinite(p.x) && std::isfinite(p.t) && p.x > 0.0 &&
                p.x <= box.x_max && p.t > 0.0 && p.t <= box.t_max,
            "alpha-point outside (0, x_max] x (0, t_max]");
  }
  std::sort(alphas.begin(), alphas.end(),
            [](const Point& a, const Point& b) { return a.t < b.t; });

  Instance inst;
  inst.alpha_x_order_ = order_alphas_by_x(alphas, box.x_max);
  require(x_collisions(alphas, inst.alpha_x_order_, sources).empty(),
          "alpha-point x-coordinate collides with another alpha or a source");
  require(t_collisions(alphas, sinks).empty(),
          "alpha-point t-coordinate collides with another alpha or a sink");
  inst.sources_ = std::move(sources);
  inst.sinks_ = std::move(sinks);
  inst.alphas_ = std::move(alphas);
  inst.box_ = box;
  inst.intensities_ = intensities;
  inst.seed_ = seed;
  return inst;
}

Instance sample_instance(const Intensities& intensities, const Box& box,
                         const Seed& seed) {
  validate(intensities);
  validate(box);

  Instance inst;
  inst.box_ = box;
  inst.intensities_ = intensities;
  inst.seed_ = seed;

  Engine src = make_engine(seed, Stream::kSources);
  inst.sources_ = sample_axis(src, intensities.lambda, box.x_max);
  Engine snk = make_engine(seed, Stream::kSinks);
  inst.sinks_ = sample_axis(snk, intensities.mu, box.t_max);

  // Count-then-place per horizontal strip; each strip holds about 32
  // points, so sorting by t is a sequence of small sorts.
  Engine alp = make_engine(seed, Stream::kAlphas);
  const double expected = intensities.nu * box.x_max * box.t_max;
  const std::size_t strips = static_cast<std::size_t>(
      std::clamp(std::ceil(expected / 32.0), 1.0, 4194304.0));
  std::vector<Point>& alphas = inst.alphas_;
  alphas.reserve(static_cast<std::size_t>(expected + 6.0 * std::sqrt(expected) + 16.0));
  double lo = 0.0;
  for (std::size_t k = 0; k < strips; ++k) {
    const double hi = (k + 1 == strips)
                          ? box.t_max
                          : box.t_max * static_cast<double>(k + 1) /
                                static_cast<double>(strips);
    const std::uint64_t n =
        poisson_count(alp, intensities.nu * box.x_max * (hi - lo));
    const std::size_t first = alphas.size();
    for (std::uint64_t i = 0; i < n; ++i) {
      const double x = box.x_max * uniform_open_closed(alp);
      const double t = std::min(hi, lo + (hi - lo) * uniform_open_closed(alp));
      alphas.push_back({x, t});
    }
    std::sort(alphas.begin() + static_cast<std::ptrdiff_t>(first), alphas.end(),
              [](const Point& a, const Point& b) { return a.t < b.t; });
    lo = hi;
  }

  // Coordinate collisions have probability zero for real-valued points but
  // not for doubles; redraw the offending coordinate.
  for (int round = 0;; ++round) {
    if (round > 1000) throw std::runtime_error("cannot resolve coordinate collisions");
    bool clean = true;
    for (std::size_t i : t_collisions(alphas, inst.sinks_)) {
      const double prev = i > 0 ? alphas[i - 1].t : 0.0;
      const double next = i + 1 < alphas.size() ? alphas[i + 1].t : box.t_max;
      alphas[i].t = prev + (next - prev) * uniform_open_closed(alp);
      clean = false;
    }
    inst.alpha_x_order_ = order_alphas_by_x(alphas, box.x_max);
    for (std::size_t i : x_collisions(alphas, inst.alpha_x_order_, inst.sources_)) {
      alphas[i].x = box.x_max * uniform_open_closed(alp);
      clean = false;
    }
    if (clean) break;
  }
  return inst;
}

Instance transpose_instance(const Instance& in) {
  Instance out;
  out.sources_ = in.sinks_;
  out.sinks_ = in.sources_;
  out.box_ = Box{in.box_.t_max, in.box_.x_max};
  out.intensities_ = Intensities{in.intensities_.mu, in.intensities_.lambda,
                                 in.intensities_.nu};
  out.seed_ = in.seed_;
  out.nudged_points_ = in.nudged_points_;

  // New t-order is the old x-order; new x-order is the old t-order.
  const std::size_t n = in.alphas_.size();
  out.alphas_.resize(n);
  out.alpha_x_order_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t old = in.alpha_x_order_[k];
    out.alphas_[k] = Point{in.alphas_[old].t, in.alphas_[old].x};
    out.alpha_x_order_[old] = static_cast<std::uint32_t>(k);
  }
  return out;
}

AlphaInsertion add_alpha(const Instance& in, double u, double v) {
  const Box& box = in.box_;
  require(std::isfinite(u) && std::isfinite(v) && u > 0.0 && u < box.x_max &&
              v > 0.0 && v < box.t_max,
          "added alpha-point must lie in the open box");

  auto x_taken = [&](double x) {
    if (std::binary_search(in.sources_.begin(), in.sources_.end(), x)) return true;
    return std::any_of(in.alphas_.begin(), in.alphas_.end(),
                       [x](const Point& p) { return p.x == x; });
  };
  auto t_taken = [&](double t) {
    if (std::binary_search(in.sinks_.begin(), in.sinks_.end(), t)) return true;
    return std::any_of(in.alphas_.begin(), in.alphas_.end(),
                       [t](const Point& p) { return p.t == t; });
  };
  Point placed{u, v};
  while (x_taken(placed.x)) placed.x = std::nextafter(placed.x, kInf);
  while (t_taken(placed.t)) placed.t = std::nextafter(placed.t, kInf);
  require(placed.x <= box.x_max && placed.t <= box.t_max,
          "no free coordinate for the added alpha-point");

  AlphaInsertion result;
  Instance& out = result.instance;
  out = in;
  auto pos = std::upper_bound(
      out.alphas_.begin(), out.alphas_.end(), placed.t,
      [](double t, const Point& p) { return t < p.t; });
  out.alphas_.insert(pos, placed);
  out.alpha_x_order_ = order_alphas_by_x(out.alphas_, box.x_max);
  result.placed = placed;
  result.nudged = !(placed == Point{u, v});
  if (result.nudged) ++out.nudged_points_;
  return result;
}

Instance restrict_instance(const Instance& in, const Box& box) {
  validate(box);
  require(box.x_max <= in.box().x_max && box.t_max <= in.box().t_max,
          "restriction box must lie inside the instance box");
  std::vector<double> sources, sinks;
  std::vector<Point> alphas;
  for (double s : in.sources()) if (s <= box.x_max) sources.push_back(s);
  for (double w : in.sinks()) if (w <= box.t_max) sinks.push_back(w);
  for (const Point& p : in.alphas()) {
    if (p.x <= box.x_max && p.t <= box.t_max) alphas.push_back(p);
  }
  return Instance::make(std::move(sources), std::move(sinks), std::move(alphas),
                        box, in.intensities(), in.seed());
}

}  // namespace hamlab
