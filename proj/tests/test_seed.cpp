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

#include "hamlab/seed.hpp"

#include <gtest/gtest.h>

namespace hamlab {
namespace {

TEST(Seed, StreamsAreAPureFunctionOfSeed) {
  Engine a = make_engine({42, 7}, Stream::kAlphas);
  Engine b = make_engine({42, 7}, Stream::kAlphas);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(Seed, StreamsDifferAcrossReplicationAndStream) {
  const auto first = [](Seed s, Stream st) { return make_engine(s, st)(); };
  EXPECT_NE(first({1, 0}, Stream::kSources), first({1, 1}, Stream::kSources));
  EXPECT_NE(first({1, 0}, Stream::kSources), first({2, 0}, Stream::kSources));
  EXPECT_NE(first({1, 0}, Stream::kSources), first({1, 0}, Stream::kSinks));
}

TEST(Seed, UniformRanges) {
  Engine e = make_engine({3, 3}, Stream::kAuxiliary);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform_open_closed(e);
    EXPECT_GT(u, 0.0);
    EXPECT_LE(u, 1.0);
    const double w = uniform_closed_open(e);
    EXPECT_GE(w, 0.0);
    EXPECT_LT(w, 1.0);
  }
}

}  // namespace
}  // namespace hamlab
