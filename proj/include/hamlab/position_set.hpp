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

#ifndef HAMLAB_POSITION_SET_HPP_
#define HAMLAB_POSITION_SET_HPP_

#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

namespace hamlab {

// Ordered set over the fixed universe {0, ..., size-1}: a 64-ary tree of
// occupancy bitmasks. Insert, erase and successor cost O(log_64 size).
class PositionSet {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  PositionSet() = default;
  explicit PositionSet(std::size_t universe) { reset(universe); }

  void reset(std::size_t universe) {
    universe_ = universe;
    count_ = 0;
    levels_.clear();
    std::size_t n = universe;
    do {
      n = (n + 63) / 64;
      levels_.emplace_back(n == 0 ? 1 : n, 0);
    } while (n > 1);
  }

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(std::size_t r) const {
    return r < universe_ && ((levels_[0][r >> 6] >> (r & 63)) & 1u);
  }

  void insert(std::size_t r) {
    for (std::size_t level = 0; level < levels_.size(); ++level) {
      std::uint64_t& word = levels_[level][r >> 6];
      const std::uint64_t before = word;
      word |= std::uint64_t{1} << (r & 63);
      if (level == 0 && before != word) ++count_;
      if (before != 0) break;
      r >>= 6;
    }
  }

  void erase(std::size_t r) {
    for (std::size_t level = 0; level < levels_.size(); ++level) {
      std::uint64_t& word = levels_[level][r >> 6];
      const std::uint64_t before = word;
      word &= ~(std::uint64_t{1} << (r & 63));
      if (level == 0 && before != word) --count_;
      if (word != 0) break;
      r >>= 6;
    }
  }

  // Smallest member >= r, or npos.
  std::size_t successor(std::size_t r) const {
    if (r >= universe_) return npos;
    std::size_t level = 0;
    std::size_t i = r;
    for (;;) {
      if (level == levels_.size()) return npos;
      const std::vector<std::uint64_t>& words = levels_[level];
      const std::size_t w = i >> 6;
      if (w >= words.size()) return npos;
      const std::uint64_t bits = words[w] & (~std::uint64_t{0} << (i & 63));
      if (bits != 0) {
        i = (w << 6) | static_cast<std::size_t>(std::countr_zero(bits));
        break;
      }
      ++level;
      i = w + 1;
    }
    while (level > 0) {
      --level;
      i = (i << 6) | static_cast<std::size_t>(std::countr_zero(levels_[level][i]));
    }
    return i;
  }

  std::size_t first() const { return successor(0); }

 private:
  std::vector<std::vector<std::uint64_t>> levels_;
  std::size_t universe_ = 0;
  std::size_t count_ = 0;
};

}  // namespace hamlab

#endif  // HAMLAB_POSITION_SET_HPP_
