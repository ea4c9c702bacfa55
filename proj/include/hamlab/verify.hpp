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

#ifndef HAMLAB_VERIFY_HPP_
#define HAMLAB_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hamlab/instance.hpp"

namespace hamlab {

// Each check returns a description of the first mismatch, or nothing.

// south + east == north + west at every grid point.
std::optional<std::string> check_flux_conservation(const Instance& instance,
                                                   std::span<const Point> grid);
// Dynamics flux equals the longest chain, and the subset enumeration when
// the instance is small enough.
std::optional<std::string> check_flux_lpp(const Instance& instance, std::span<const Point> grid);
std::optional<std::string> check_trace_oracle(const Instance& instance, double u, double v);
// X' of the instance mirrors X of the transposed instance.
std::optional<std::string> check_reflection(const Instance& instance, double u, double v);
// Dropping sinks keeps every event right of X; dropping sources keeps every
// event left of X'. `mask_seed` picks the dropped subsets.
std::optional<std::string> check_path_coincidence(const Instance& instance,
                                                  std::uint64_t mask_seed);
// Flux delta after adding an alpha-point is the region indicator.
std::optional<std::string> check_perturbation_region(const Instance& instance, double u,
                                                     double v, std::span<const Point> grid);
// With the alpha-point added, events after the meeting, and events whose
// segment avoids the closed region, are unchanged.
std::optional<std::string> check_annihilation(const Instance& instance, double u, double v);

struct CheckTally {
  std::string name;
  std::int64_t checked = 0;
  std::int64_t failed = 0;
  std::string first_failure;
};

struct VerifyReport {
  std::vector<CheckTally> checks;
  bool all_passed() const;
};

// Runs every check on `cases` seeded random small instances.
VerifyReport run_invariant_suite(std::int64_t cases, std::uint64_t seed, unsigned workers = 1);

}  // namespace hamlab

#endif  // HAMLAB_VERIFY_HPP_
