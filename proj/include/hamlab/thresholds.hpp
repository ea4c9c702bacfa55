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

#ifndef HAMLAB_THRESHOLDS_HPP_
#define HAMLAB_THRESHOLDS_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

namespace hamlab {

// Pass/fail thresholds keyed by dotted names such as "exceed.tolerance".
// Every key has a built-in default; fixture files and explicit overrides
// replace values but may not introduce unknown keys.
class Thresholds {
 public:
  Thresholds();

  double get(std::string_view key) const;
  void set(std::string_view key, double value);
  // `key = value` lines; blank lines and `#` comments ignored.
  void load(std::istream& in, std::string_view origin = "<stream>");
  void load(const std::filesystem::path& path);
  // Parses "key=value".
  void apply_override(std::string_view assignment);

  const std::map<std::string, double, std::less<>>& values() const { return values_; }

 private:
  std::map<std::string, double, std::less<>> values_;
};

}  // namespace hamlab

#endif  // HAMLAB_THRESHOLDS_HPP_
