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

#include "hamlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hamlab {

Summary summarize(std::span<const double> values) {
  Summary s;
  s.n = values.size();
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.variance = ss / static_cast<double>(s.n - 1);
  s.std_error = std::sqrt(s.variance / static_cast<double>(s.n));
  return s;
}

CovarianceEstimate covariance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("covariance: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) return {};
  const double ma = summarize(a).mean;
  const double mb = summarize(b).mean;
  std::vector<double> products(n);
  for (std::size_t i = 0; i < n; ++i) products[i] = (a[i] - ma) * (b[i] - mb);
  const Summary p = summarize(products);
  const double scale = static_cast<double>(n) / static_cast<double>(n - 1);
  return {p.mean * scale, p.std_error * scale};
}

DispersionEstimate dispersion(std::span<const double> counts) {
  const Summary s = summarize(counts);
  if (!(s.mean > 0.0)) throw std::invalid_argument("dispersion: mean must be positive");
  const std::size_t n = s.n;
  // Delta method on (m, v) from the first four central moments.
  double m3 = 0.0;
  double m4 = 0.0;
  for (double c : counts) {
    const double d = c - s.mean;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m3 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  const double m = s.mean;
  const double v = s.variance;
  const double var_v = (m4 - v * v) / static_cast<double>(n);
  const double var_m = v / static_cast<double>(n);
  const double cov_mv = m3 / static_cast<double>(n);
  const double gv = 1.0 / m;
  const double gm = -v / (m * m);
  const double var_index = gv * gv * var_v + gm * gm * var_m + 2.0 * gv * gm * cov_mv;
  return {v / m, std::sqrt(std::max(var_index, 0.0))};
}

}  // namespace hamlab
