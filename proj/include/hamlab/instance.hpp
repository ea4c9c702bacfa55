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

#ifndef HAMLAB_INSTANCE_HPP_
#define HAMLAB_INSTANCE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "hamlab/seed.hpp"

namespace hamlab {

// Intensities of the three independent Poisson inputs: sources per unit
// length on the x-axis, sinks per unit time on the t-axis, alpha-points per
// unit area.
struct Intensities {
  double lambda = 0.0;
  double mu = 0.0;
  double nu = 0.0;

  friend bool operator==(const Intensities&, const Intensities&) = default;
};

// The rectangle [0, x_max] x [0, t_max].
struct Box {
  double x_max = 1.0;
  double t_max = 1.0;

  friend bool operator==(const Box&, const Box&) = default;
};

struct Point {
  double x = 0.0;
  double t = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct AlphaInsertion;

void validate(const Intensities& intensities);
void validate(const Box& box);

// One realization of the inputs on a box. Immutable once built.
//
// Invariants (checked by make(), guaranteed by sample_instance()):
//   * sources strictly increasing in (0, x_max], sinks strictly increasing
//     in (0, t_max];
//   * alphas lie in (0, x_max] x (0, t_max] and are stored in increasing t;
//   * alpha x-coordinates are pairwise distinct and distinct from sources;
//     alpha t-coordinates are pairwise distinct and distinct from sinks.
class Instance {
 public:
  Instance() = default;

  // Validates and canonicalizes (sorts) the inputs. Throws
  // std::invalid_argument on any violated invariant.
  static Instance make(std::vector<double> sources, std::vector<double> sinks,
                       std::vector<Point> alphas, Box box,
                       Intensities intensities = {}, Seed seed = {});

  std::span<const double> sources() const { return sources_; }
  std::span<const double> sinks() const { return sinks_; }
  // Sorted by increasing t.
  std::span<const Point> alphas() const { return alphas_; }
  // Permutation of alpha indices that sorts alphas by increasing x.
  std::span<const std::uint32_t> alpha_x_order() const { return alpha_x_order_; }

  const Box& box() const { return box_; }
  const Intensities& intensities() const { return intensities_; }
  const Seed& seed() const { return seed_; }
  // Number of points whose coordinates were moved by one ulp to keep the
  // distinctness invariants (see add_alpha).
  std::uint32_t nudged_points() const { return nudged_points_; }

  std::size_t total_points() const {
    return sources_.size() + sinks_.size() + alphas_.size();
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.sources_ == b.sources_ && a.sinks_ == b.sinks_ &&
           a.alphas_ == b.alphas_ && a.box_ == b.box_ &&
           a.intensities_ == b.intensities_ && a.seed_ == b.seed_;
  }

 private:
  friend Instance sample_instance(const Intensities&, const Box&, const Seed&);
  friend Instance transpose_instance(const Instance&);
  friend AlphaInsertion add_alpha(const Instance&, double, double);

  std::vector<double> sources_;
  std::vector<double> sinks_;
  std::vector<Point> alphas_;
  std::vector<std::uint32_t> alpha_x_order_;
  Box box_;
  Intensities intensities_;
  Seed seed_;
  std::uint32_t nudged_points_ = 0;
};

// Independent homogeneous Poisson realizations of sources, sinks and
// alpha-points over the box. Deterministic in (intensities, box, seed).
Instance sample_instance(const Intensities& intensities, const Box& box,
                         const Seed& seed);

// Reflection across the diagonal: sources and sinks swap roles, alpha
// coordinates swap, the box and lambda/mu swap.
Instance transpose_instance(const Instance& instance);

struct AlphaInsertion {
  Instance instance;
  Point placed;         // where the point actually went
  bool nudged = false;  // placed differs from the requested point
};

// Adds one alpha-point at (u, v), which must lie in the open box. A
// coordinate that collides with an existing one is moved up by one ulp
// until the distinctness invariants hold.
AlphaInsertion add_alpha(const Instance& instance, double u, double v);

// Instance restricted to the sub-box [0, box.x_max] x [0, box.t_max].
Instance restrict_instance(const Instance& instance, const Box& box);

}  // namespace hamlab

#endif  // HAMLAB_INSTANCE_HPP_
