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

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hamlab {
namespace {

std::string valid_text() {
  return "HAMMERSLEY-INSTANCE v1\n"
         "box 4 5\n"
         "intensities 1 0.5 2\n"
         "seed 9 2\n"
         "sources\n1\n3\nend\n"
         "sinks\n2\nend\n"
         "alphas\n1.5 2.5\n0.5 0.5\nend\n";
}

std::string error_of(const std::string& text) {
  std::istringstream in(text);
  try {
    read_instance(in);
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

TEST(InstanceIo, RoundTripIsExact) {
  for (std::uint64_t rep = 0; rep < 10; ++rep) {
    const Instance inst = sample_instance({1.3, 0.7, 3.1}, {4.5, 3.25}, {77, rep});
    std::stringstream buf;
    write_instance(buf, inst);
    EXPECT_EQ(read_instance(buf), inst);
  }
}

TEST(InstanceIo, ReadsHandWrittenFile) {
  std::istringstream in(valid_text());
  const Instance inst = read_instance(in);
  EXPECT_EQ(inst.box(), (Box{4.0, 5.0}));
  EXPECT_EQ(inst.intensities(), (Intensities{1.0, 0.5, 2.0}));
  EXPECT_EQ(inst.seed(), (Seed{9, 2}));
  EXPECT_EQ(inst.sources().size(), 2u);
  EXPECT_EQ(inst.alphas()[0], (Point{0.5, 0.5}));
}

TEST(InstanceIo, ErrorsNameTheLine) {
  EXPECT_NE(error_of("HAMMERSLEY-INSTANCE v2\n").find("line 1"), std::string::npos);
  std::string bad = valid_text();
  bad.replace(bad.find("box 4 5"), 7, "box 4 x");
  EXPECT_NE(error_of(bad).find("line 2"), std::string::npos);
  bad = valid_text();
  bad.replace(bad.find("1.5 2.5"), 7, "1.5");
  EXPECT_NE(error_of(bad).find("line 13"), std::string::npos);
  EXPECT_NE(error_of(valid_text() + "extra\n").find("trailing"), std::string::npos);
  EXPECT_NE(error_of("HAMMERSLEY-INSTANCE v1\nbox 1 1\n").find("end of input"), std::string::npos);
}

TEST(InstanceIo, InvalidContentIsRejected) {
  std::string bad = valid_text();
  bad.replace(bad.find("sources\n1\n"), 10, "sources\n9\n");
  std::istringstream in(bad);
  EXPECT_THROW(read_instance(in), std::invalid_argument);
}

TEST(InstanceIo, FileErrorsNameThePath) {
  const std::string missing = "/nonexistent-dir/instance.txt";
  try {
    load_instance(missing);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(missing), std::string::npos);
  }
  EXPECT_THROW(save_instance(missing, Instance::make({}, {}, {}, {1, 1})), std::runtime_error);
}

TEST(InstanceIo, SaveAndLoad) {
  const auto path = std::filesystem::temp_directory_path() / "hamlab_io_test.txt";
  const Instance inst = sample_instance({2, 2, 2}, {3, 3}, {1, 1});
  save_instance(path.string(), inst);
  EXPECT_EQ(load_instance(path.string()), inst);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace hamlab
