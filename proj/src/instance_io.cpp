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

#include "hamlab/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace hamlab {
namespace {

constexpr const char* kHeader = "HAMMERSLEY-INSTANCE v1";

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw std::runtime_error("instance file line " + std::to_string(line) + ": " + what);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  }
  std::string expect() {
    std::string line;
    if (!next(line)) parse_error(number_, "unexpected end of input");
    return line;
  }
  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

template <class... T>
void parse_fields(const std::string& line, std::size_t number,
                  const std::string& keyword, T&... values) {
  std::istringstream ss(line);
  std::string word;
  ss >> word;
  if (word != keyword) parse_error(number, "expected '" + keyword + "'");
  if (!(ss >> ... >> values)) parse_error(number, "malformed '" + keyword + "' line");
  if (ss >> word) parse_error(number, "trailing data after '" + keyword + "'");
}

template <class Row>
std::vector<Row> read_section(LineReader& reader, const std::string& name) {
  if (reader.expect() != name) parse_error(reader.number(), "expected section '" + name + "'");
  std::vector<Row> rows;
  for (;;) {
    const std::string line = reader.expect();
    if (line == "end") return rows;
    std::istringstream ss(line);
    Row row{};
    if constexpr (std::is_same_v<Row, Point>) {
      ss >> row.x >> row.t;
    } else {
      ss >> row;
    }
    std::string rest;
    if (ss.fail() || (ss >> rest)) parse_error(reader.number(), "malformed entry in '" + name + "'");
    rows.push_back(row);
  }
}

}  // namespace

void write_instance(std::ostream& out, const Instance& inst) {
  out << kHeader << '\n';
  out << "box " << sci(inst.box().x_max) << ' ' << sci(inst.box().t_max) << '\n';
  const Intensities& in = inst.intensities();
  out << "intensities " << sci(in.lambda) << ' ' << sci(in.mu) << ' ' << sci(in.nu) << '\n';
  out << "seed " << inst.seed().master << ' ' << inst.seed().replication << '\n';
  out << "sources\n";
  for (double s : inst.sources()) out << sci(s) << '\n';
  out << "end\nsinks\n";
  for (double w : inst.sinks()) out << sci(w) << '\n';
  out << "end\nalphas\n";
  for (const Point& p : inst.alphas()) out << sci(p.x) << ' ' << sci(p.t) << '\n';
  out << "end\n";
}

Instance read_instance(std::istream& in) {
  LineReader reader(in);
  if (reader.expect() != kHeader) parse_error(reader.number(), "missing header");
  std::string line = reader.expect();
  Box box;
  parse_fields(line, reader.number(), "box", box.x_max, box.t_max);
  line = reader.expect();
  Intensities intensities;
  parse_fields(line, reader.number(), "intensities", intensities.lambda, intensities.mu,
               intensities.nu);
  line = reader.expect();
  Seed seed;
  parse_fields(line, reader.number(), "seed", seed.master, seed.replication);
  auto sources = read_section<double>(reader, "sources");
  auto sinks = read_section<double>(reader, "sinks");
  auto alphas = read_section<Point>(reader, "alphas");
  std::string extra;
  if (reader.next(extra)) parse_error(reader.number(), "trailing content");
  return Instance::make(std::move(sources), std::move(sinks), std::move(alphas), box,
                        intensities, seed);
}

void save_instance(const std::string& path, const Instance& instance) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_instance(out, instance);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_instance(in);
}

}  // namespace hamlab
