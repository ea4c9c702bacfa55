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

#include "hamlab/seed.hpp"

#include <array>

namespace hamlab {

Engine make_engine(const Seed& seed, Stream stream) {
  const std::array<std::uint32_t, 6> words = {
      static_cast<std::uint32_t>(seed.master),
      static_cast<std::uint32_t>(seed.master >> 32),
      static_cast<std::uint32_t>(seed.replication),
      static_cast<std::uint32_t>(seed.replication >> 32),
      static_cast<std::uint32_t>(stream),
      0x48414d4cu,  // "HAML"
  };
  std::seed_seq seq(words.begin(), words.end());
  return Engine(seq);
}

}  // namespace hamlab
