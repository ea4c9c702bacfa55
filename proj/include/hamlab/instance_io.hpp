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

#ifndef HAMLAB_INSTANCE_IO_HPP_
#define HAMLAB_INSTANCE_IO_HPP_

#include <iosfwd>
#include <string>

#include "hamlab/instance.hpp"

namespace hamlab {

// Line-oriented text format:
//
//   HAMMERSLEY-INSTANCE v1
//   box <x_max> <t_max>
//   intensities <lambda> <mu> <nu>
//   seed <master> <rep>
//   sources
//   <x>            (one per line)
//   end
//   sinks
//   <t>
//   end
//   alphas
//   <x> <t>
//   end
//
// Reals are written in scientific notation with 17 significant digits, so
// a round trip reproduces every coordinate exactly.
void write_instance(std::ostream& out, const Instance& instance);
Instance read_instance(std::istream& in);

void save_instance(const std::string& path, const Instance& instance);
Instance load_instance(const std::string& path);

}  // namespace hamlab

#endif  // HAMLAB_INSTANCE_IO_HPP_
