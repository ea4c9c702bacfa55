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

#ifndef HAMLAB_TOOLS_CLI_HPP_
#define HAMLAB_TOOLS_CLI_HPP_

#include <iosfwd>

namespace hamlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // statistical failure or I/O error
inline constexpr int kExitUsage = 2;

// Parses the command line, runs the subcommand and returns the exit code.
// Reports go to `out` unless --out is given; diagnostics go to `err`.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hamlab::cli

#endif  // HAMLAB_TOOLS_CLI_HPP_
