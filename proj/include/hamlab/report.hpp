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

#ifndef HAMLAB_REPORT_HPP_
#define HAMLAB_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>

namespace hamlab {

// Shortest decimal text that reads back to the same double; "inf", "-inf"
// and "nan" for non-finite values.
std::string format_number(double value);

// One estimated statistic together with the configuration that produced
// it. Configuration fields that do not apply are NaN and print empty.
struct EstimateReport {
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  std::string experiment;
  double lambda = kUnset;
  double mu = kUnset;
  double nu = kUnset;
  double a = kUnset;
  double x = kUnset;
  double t = kUnset;
  double h = kUnset;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;

  std::string statistic;
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t n_reps = 0;
  std::optional<double> target;
  std::optional<bool> pass;
};

enum class ReportFormat { kCsv, kJsonl };

inline constexpr const char* kReportCsvHeader =
    "experiment,lambda,mu,nu,a,x,t,h,reps,seed,statistic,estimate,std_error,n_reps,target,pass";

void write_report(std::ostream& out, std::span<const EstimateReport> reports, ReportFormat format);
// Throws std::runtime_error naming the path when the file cannot be written.
void write_report(const std::filesystem::path& path, std::span<const EstimateReport> reports,
                  ReportFormat format);

}  // namespace hamlab

#endif  // HAMLAB_REPORT_HPP_
