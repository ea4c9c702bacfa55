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

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace hamlab {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(double value) { return std::isnan(value) ? std::string() : format_number(value); }

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

nlohmann::ordered_json json_number(double value) {
  if (std::isfinite(value)) return value;
  if (std::isnan(value)) return nullptr;
  return format_number(value);
}

void write_csv(std::ostream& out, std::span<const EstimateReport> reports) {
  out << kReportCsvHeader << '\n';
  for (const EstimateReport& r : reports) {
    out << csv_text(r.experiment) << ',' << csv_field(r.lambda) << ',' << csv_field(r.mu) << ','
        << csv_field(r.nu) << ',' << csv_field(r.a) << ',' << csv_field(r.x) << ','
        << csv_field(r.t) << ',' << csv_field(r.h) << ',' << r.reps << ',' << r.seed << ','
        << csv_text(r.statistic) << ',' << format_number(r.estimate) << ','
        << format_number(r.std_error) << ',' << r.n_reps << ','
        << (r.target ? format_number(*r.target) : "") << ','
        << (r.pass ? (*r.pass ? "true" : "false") : "") << '\n';
  }
}

void write_jsonl(std::ostream& out, std::span<const EstimateReport> reports) {
  for (const EstimateReport& r : reports) {
    nlohmann::ordered_json j;
    j["experiment"] = r.experiment;
    j["lambda"] = json_number(r.lambda);
    j["mu"] = json_number(r.mu);
    j["nu"] = json_number(r.nu);
    j["a"] = json_number(r.a);
    j["x"] = json_number(r.x);
    j["t"] = json_number(r.t);
    j["h"] = json_number(r.h);
    j["reps"] = r.reps;
    j["seed"] = r.seed;
    j["statistic"] = r.statistic;
    j["estimate"] = json_number(r.estimate);
    j["std_error"] = json_number(r.std_error);
    j["n_reps"] = r.n_reps;
    j["target"] = r.target ? json_number(*r.target) : nlohmann::ordered_json(nullptr);
    j["pass"] = r.pass ? nlohmann::ordered_json(*r.pass) : nlohmann::ordered_json(nullptr);
    out << j.dump() << '\n';
  }
}

}  // namespace

void write_report(std::ostream& out, std::span<const EstimateReport> reports, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    write_csv(out, reports);
  } else {
    write_jsonl(out, reports);
  }
}

void write_report(const std::filesystem::path& path, std::span<const EstimateReport> reports,
                  ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report file '" + path.string() + "' for writing");
  write_report(out, reports, format);
  out.flush();
  if (!out) throw std::runtime_error("failed writing report file '" + path.string() + "'");
}

}  // namespace hamlab
