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

#ifndef HAMLAB_LPP_HPP_
#define HAMLAB_LPP_HPP_

#include <cstdint>
#include <vector>

#include "hamlab/instance.hpp"

namespace hamlab {

enum class ChainPointKind : std::uint8_t { kSource, kSink, kAlpha };

// A source s is reported as (s, 0), a sink w as (0, w).
struct ChainPoint {
  ChainPointKind kind = ChainPointKind::kAlpha;
  Point point;

  friend bool operator==(const ChainPoint&, const ChainPoint&) = default;
};

struct ChainValue {
  std::int64_t length = 0;
  std::vector<ChainPoint> witness;  // empty unless requested
};

// Longest chain ending in [0, x] x [0, t]: a prefix of sources (or of
// sinks) followed by alpha-points increasing in both coordinates, strictly
// to the right of the last source (above the last sink). Patience sweep in
// O(n log n) over the points of the query rectangle.
ChainValue flux_lpp(const Instance& instance, double x, double t,
                    bool with_witness = false);

inline constexpr std::size_t kBruteForcePointCap = 20;

// Same value by enumerating every subset of the points in the query
// rectangle. Rejects instances with more than kBruteForcePointCap points.
std::int64_t brute_force_flux(const Instance& instance, double x, double t);

}  // namespace hamlab

#endif  // HAMLAB_LPP_HPP_
