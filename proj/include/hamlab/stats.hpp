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

#ifndef HAMLAB_STATS_HPP_
#define HAMLAB_STATS_HPP_

#include <cstddef>
#include <span>

namespace hamlab {

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance; 0 when n < 2
  double std_error = 0.0;
};

Summary summarize(std::span<const double> values);

// Sample covariance and the standard error of that estimate, computed from
// the spread of the centered products.
struct CovarianceEstimate {
  double covariance = 0.0;
  double std_error = 0.0;
};

CovarianceEstimate covariance(std::span<const double> a, std::span<const double> b);

// Variance-to-mean ratio with a delta-method standard error. Requires a
// positive mean.
struct DispersionEstimate {
  double index = 0.0;
  double std_error = 0.0;
};

DispersionEstimate dispersion(std::span<const double> counts);

}  // namespace hamlab

#endif  // HAMLAB_STATS_HPP_
