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

#ifndef HAMLAB_BUCKET_ORDER_HPP_
#define HAMLAB_BUCKET_ORDER_HPP_

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace hamlab {

// Returns the permutation that sorts `keys` ascending (ties by index).
// Keys are expected to be spread over [0, upper]; bucketing makes this
// linear in expectation for uniform keys, which is what every caller has.
inline std::vector<std::uint32_t> bucket_order(std::span<const double> keys,
                                               double upper) {
  const std::size_t n = keys.size();
  std::vector<std::uint32_t> order(n);
  if (n == 0) return order;
  if (n < 64 || !(upper > 0.0)) {
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return keys[a] < keys[b] || (keys[a] == keys[b] && a < b);
    });
    return order;
  }
  const std::size_t buckets = n / 2;
  const double scale = static_cast<double>(buckets) / upper;
  auto bucket_of = [&](double k) {
    const double b = k * scale;
    if (!(b > 0.0)) return std::size_t{0};
    return std::min(buckets - 1, static_cast<std::size_t>(b));
  };
  std::vector<std::uint32_t> start(buckets + 1, 0);
  std::vector<std::uint32_t> bucket(n);
  for (std::size_t i = 0; i < n; ++i) {
    bucket[i] = static_cast<std::uint32_t>(bucket_of(keys[i]));
    ++start[bucket[i] + 1];
  }
  for (std::size_t b = 0; b < buckets; ++b) start[b + 1] += start[b];
  std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    order[fill[bucket[i]]++] = static_cast<std::uint32_t>(i);
  }
  for (std::size_t b = 0; b < buckets; ++b) {
    auto first = order.begin() + start[b];
    auto last = order.begin() + start[b + 1];
    auto less = [&](std::uint32_t a, std::uint32_t b) {
      return keys[a] < keys[b] || (keys[a] == keys[b] && a < b);
    };
    if (last - first > 32) {
      std::sort(first, last, less);
      continue;
    }
    // Insertion sort; buckets hold two keys on average.
    for (auto it = first; it != last; ++it) {
      const std::uint32_t v = *it;
      auto j = it;
      while (j != first) {
        const std::uint32_t p = *(j - 1);
        if (less(p, v)) break;
        *j = p;
        --j;
      }
      *j = v;
    }
  }
  return order;
}

}  // namespace hamlab

#endif  // HAMLAB_BUCKET_ORDER_HPP_
