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

#include "hamlab/report.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace hamlab {
namespace {

EstimateReport sample_report() {
  EstimateReport r;
  r.experiment = "exceed";
  r.lambda = 0.5;
  r.mu = 0.5;
  r.a = 1.0;
  r.x = 400.0;
  r.reps = 1000;
  r.seed = 7;
  r.statistic = "p_x_exceeds";
  r.estimate = 0.342;
  r.std_error = 0.015;
  r.n_reps = 1000;
  r.target = 1.0 / 3.0;
  r.pass = true;
  return r;
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333333333");
  EXPECT_EQ(format_number(INFINITY), "inf");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  EXPECT_EQ(format_number(NAN), "nan");
}

TEST(WriteReport, EmptyCsvIsHeaderOnly) {
  std::ostringstream out;
  write_report(out, std::span<const EstimateReport>{}, ReportFormat::kCsv);
  EXPECT_EQ(out.str(), std::string(kReportCsvHeader) + "\n");
}

TEST(WriteReport, CsvRowEchoesConfig) {
  std::ostringstream out;
  const std::vector<EstimateReport> rows{sample_report()};
  write_report(out, rows, ReportFormat::kCsv);
  EXPECT_EQ(out.str(), std::string(kReportCsvHeader) +
                           "\nexceed,0.5,0.5,,1,400,,,1000,7,p_x_exceeds,0.342,0.015,1000,"
                           "0.3333333333333333,true\n");
}

TEST(WriteReport, JsonlMirrorsCsvColumns) {
  std::ostringstream out;
  const std::vector<EstimateReport> rows{sample_report(), sample_report()};
  write_report(out, rows, ReportFormat::kJsonl);
  std::istringstream in(out.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    const auto j = nlohmann::ordered_json::parse(line);
    std::string joined;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!joined.empty()) joined += ',';
      joined += it.key();
    }
    EXPECT_EQ(joined, kReportCsvHeader);
    EXPECT_EQ(j["estimate"], 0.342);
    EXPECT_TRUE(j["nu"].is_null());
    EXPECT_EQ(j["pass"], true);
  }
  EXPECT_EQ(lines, 2);
}

TEST(WriteReport, IsBitStable) {
  const std::vector<EstimateReport> rows{sample_report()};
  std::ostringstream a, b;
  write_report(a, rows, ReportFormat::kJsonl);
  write_report(b, rows, ReportFormat::kJsonl);
  EXPECT_EQ(a.str(), b.str());
}

TEST(WriteReport, UnwritablePathNamesThePath) {
  const std::vector<EstimateReport> rows{sample_report()};
  try {
    write_report(std::filesystem::path("/nonexistent-dir/r.csv"), rows, ReportFormat::kCsv);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/r.csv"), std::string::npos);
  }
}

}  // namespace
}  // namespace hamlab
