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

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hamlab {
namespace {

void check_query(const Box& box, double x, double t) {
  if (!(x >= 0.0 && t >= 0.0 && x <= box.x_max && t <= box.t_max)) {
    throw std::invalid_argument("query corner outside the box");
  }
}

// Every point gets a pair of sort keys so that chain order is plain strict
// dominance. Sources sit below every alpha in t and are ordered among
// themselves by position; sinks sit left of every alpha in x and are
// ordered by time. A source and a sink are then never comparable.
struct Keyed {
  double xkey;
  double tkey;
  ChainPoint origin;
};

}  // namespace

ChainValue flux_lpp(const Instance& inst, double x, double t, bool with_witness) {
  check_query(inst.box(), x, t);
  const auto sources = inst.sources();
  const auto sinks = inst.sinks();
  const std::size_t ns =
      static_cast<std::size_t>(std::upper_bound(sources.begin(), sources.end(), x) - sources.begin());
  const std::size_t nw =
      static_cast<std::size_t>(std::upper_bound(sinks.begin(), sinks.end(), t) - sinks.begin());

  std::vector<Keyed> pts;
  pts.reserve(ns + nw + inst.alphas().size());
  for (std::size_t i = 0; i < ns; ++i) {
    pts.push_back({sources[i], -static_cast<double>(ns - i),
                   {ChainPointKind::kSource, {sources[i], 0.0}}});
  }
  for (std::size_t j = 0; j < nw; ++j) {
    pts.push_back({-static_cast<double>(nw - j), sinks[j],
                   {ChainPointKind::kSink, {0.0, sinks[j]}}});
  }
  for (const Point& p : inst.alphas()) {
    if (p.t > t) break;
    if (p.x <= x) pts.push_back({p.x, p.t, {ChainPointKind::kAlpha, p}});
  }
  std::sort(pts.begin(), pts.end(), [](const Keyed& a, const Keyed& b) {
    return a.xkey < b.xkey || (a.xkey == b.xkey && a.tkey > b.tkey);
  });

  // tails[k]: smallest tkey ending a chain of length k + 1.
  std::vector<double> tails;
  std::vector<std::size_t> tail_index;
  std::vector<std::size_t> parent(with_witness ? pts.size() : 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double key = pts[i].tkey;
    const auto it = std::lower_bound(tails.begin(), tails.end(), key);
    const std::size_t k = static_cast<std::size_t>(it - tails.begin());
    if (it == tails.end()) {
      tails.push_back(key);
      if (with_witness) tail_index.push_back(i);
    } else {
      *it = key;
      if (with_witness) tail_index[k] = i;
    }
    if (with_witness) parent[i] = k == 0 ? pts.size() : tail_index[k - 1];
  }

  ChainValue value;
  value.length = static_cast<std::int64_t>(tails.size());
  if (with_witness && !tails.empty()) {
    for (std::size_t i = tail_index.back(); i != pts.size(); i = parent[i]) {
      value.witness.push_back(pts[i].origin);
    }
    std::reverse(value.witness.begin(), value.witness.end());
  }
  return value;
}

std::int64_t brute_force_flux(const Instance& inst, double x, double t) {
  check_query(inst.box(), x, t);
  if (inst.total_points() > kBruteForcePointCap) {
    throw std::invalid_argument("brute_force_flux: instance exceeds the point cap");
  }
  std::vector<ChainPoint> pts;
  for (double s : inst.sources()) {
    if (s <= x) pts.push_back({ChainPointKind::kSource, {s, 0.0}});
  }
  for (double w : inst.sinks()) {
    if (w <= t) pts.push_back({ChainPointKind::kSink, {0.0, w}});
  }
  for (const Point& p : inst.alphas()) {
    if (p.x <= x && p.t <= t) pts.push_back({ChainPointKind::kAlpha, p});
  }

  // A subset is a chain iff it does not mix sources with sinks, its alphas
  // are strictly increasing in both coordinates, and every alpha lies
  // strictly right of every chosen source and strictly above every chosen
  // sink.
  const std::size_t n = pts.size();
  std::int64_t best = 0;
  std::vector<Point> alphas;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    const std::int64_t size = std::popcount(mask);
    if (size <= best) continue;
    bool any_source = false, any_sink = false;
    double max_source = 0.0, max_sink = 0.0;
    alphas.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      switch (pts[i].kind) {
        case ChainPointKind::kSource:
          any_source = true;
          max_source = std::max(max_source, pts[i].point.x);
          break;
        case ChainPointKind::kSink:
          any_sink = true;
          max_sink = std::max(max_sink, pts[i].point.t);
          break;
        case ChainPointKind::kAlpha:
          alphas.push_back(pts[i].point);
          break;
      }
    }
    if (any_source && any_sink) continue;
    std::sort(alphas.begin(), alphas.end(),
              [](const Point& a, const Point& b) { return a.x < b.x; });
    bool ok = true;
    for (std::size_t i = 0; ok && i < alphas.size(); ++i) {
      if (i > 0 && !(alphas[i - 1].x < alphas[i].x && alphas[i - 1].t < alphas[i].t)) ok = false;
      if (any_source && !(alphas[i].x > max_source)) ok = false;
      if (any_sink && !(alphas[i].t > max_sink)) ok = false;
    }
    if (ok) best = size;
  }
  return best;
}

}  // namespace hamlab
