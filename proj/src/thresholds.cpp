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

#include "hamlab/thresholds.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <stdexcept>

namespace hamlab {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_value(std::string_view text, std::string_view where) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string(where) + ": not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Thresholds::Thresholds()
    : values_{
          {"area.se_factor", 3.0},
          {"area.seed_z_factor", 4.0},
          {"asymptotics.ratio_inversion_se", 0.0},
          {"asymptotics.se_factor", 3.0},
          {"burke.covariance_se_factor", 4.0},
          {"burke.dispersion_max", 1.15},
          {"burke.dispersion_min", 0.85},
          {"burke.se_factor", 4.0},
          {"exceed.high_min", 0.97},
          {"exceed.low_max", 0.03},
          {"exceed.tolerance", 0.05},
          {"exceed.trend_inversion_se", 1.0},
          {"intensity.covariance_se_factor", 4.0},
          {"intensity.dispersion_max", 1.15},
          {"intensity.dispersion_min", 0.85},
          {"intensity.relative_allowance", 0.1},
          {"intensity.se_factor", 4.0},
          {"slope.relative_allowance", 0.1},
          {"slope.se_factor", 4.0},
          {"touch.increase_se_factor", 2.0},
          {"touch.min_fraction_at_max_t", 0.0},
      } {}

double Thresholds::get(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw std::out_of_range("unknown threshold '" + std::string(key) + "'");
  return it->second;
}

void Thresholds::set(std::string_view key, double value) {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw std::invalid_argument("unknown threshold '" + std::string(key) + "'");
  }
  it->second = value;
}

void Thresholds::load(std::istream& in, std::string_view origin) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(number);
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument(where + ": expected 'key = value'");
    const std::string_view key = trim(view.substr(0, eq));
    const double value = parse_value(trim(view.substr(eq + 1)), where);
    try {
      set(key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
}

void Thresholds::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixtures file '" + path.string() + "'");
  load(in, path.string());
}

void Thresholds::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw std::invalid_argument("override must look like key=value: '" + std::string(assignment) + "'");
  }
  const std::string_view key = trim(assignment.substr(0, eq));
  set(key, parse_value(trim(assignment.substr(eq + 1)), "override"));
}

}  // namespace hamlab
