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

#include <gtest/gtest.h>

#include <sstream>
#include <stdexcept>

namespace hamlab {
namespace {

TEST(Thresholds, Defaults) {
  const Thresholds th;
  EXPECT_EQ(th.get("exceed.tolerance"), 0.05);
  EXPECT_EQ(th.get("burke.dispersion_min"), 0.85);
  EXPECT_THROW(th.get("no.such.key"), std::out_of_range);
}

TEST(Thresholds, LoadsKeyValueLines) {
  Thresholds th;
  std::istringstream in("# comment\n\n  exceed.tolerance = 0.04  # trailing\nslope.se_factor=5\n");
  th.load(in, "fixtures");
  EXPECT_EQ(th.get("exceed.tolerance"), 0.04);
  EXPECT_EQ(th.get("slope.se_factor"), 5.0);
}

TEST(Thresholds, ErrorsNameOriginAndLine) {
  Thresholds th;
  std::istringstream unknown("\nbogus.key = 1\n");
  try {
    th.load(unknown, "f.conf");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("f.conf:2"), std::string::npos);
  }
  std::istringstream bad_value("exceed.tolerance = abc\n");
  EXPECT_THROW(th.load(bad_value, "f.conf"), std::invalid_argument);
  std::istringstream no_eq("exceed.tolerance 1\n");
  EXPECT_THROW(th.load(no_eq, "f.conf"), std::invalid_argument);
  EXPECT_THROW(th.load(std::filesystem::path("/nonexistent/f.conf")), std::runtime_error);
}

TEST(Thresholds, Overrides) {
  Thresholds th;
  th.apply_override("touch.min_fraction_at_max_t=0.5");
  EXPECT_EQ(th.get("touch.min_fraction_at_max_t"), 0.5);
  EXPECT_THROW(th.apply_override("touch.min_fraction_at_max_t"), std::invalid_argument);
  EXPECT_THROW(th.apply_override("nope=1"), std::invalid_argument);
}

}  // namespace
}  // namespace hamlab
