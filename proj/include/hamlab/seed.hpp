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

#ifndef HAMLAB_SEED_HPP_
#define HAMLAB_SEED_HPP_

#include <cstdint>
#include <random>

namespace hamlab {

// Identifies one replication of an experiment. All randomness used by a
// replication is drawn from streams derived from this pair, so results do
// not depend on which worker runs the replication.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t replication = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

// Independent random streams inside one replication.
enum class Stream : std::uint32_t {
  kSources = 1,
  kSinks = 2,
  kAlphas = 3,
  kAuxiliary = 4,
};

using Engine = std::mt19937_64;

// Pure function of (seed, stream).
Engine make_engine(const Seed& seed, Stream stream);

// Uniform on (0, 1], 53 bits of resolution.
inline double uniform_open_closed(Engine& engine) {
  return static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53;
}

// Uniform on [0, 1), 53 bits of resolution.
inline double uniform_closed_open(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace hamlab

#endif  // HAMLAB_SEED_HPP_
