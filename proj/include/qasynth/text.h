// Copyright 2026 The qasynth Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QASYNTH_TEXT_H_
#define QASYNTH_TEXT_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace qasynth {

std::string_view Trim(std::string_view s);
std::string ToLower(std::string_view s);
std::vector<std::string> SplitWhitespace(std::string_view s);
std::vector<std::string> Split(std::string_view s, char sep);
std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Shortest text that parses back to the same double; integral values print
// without a fractional part ("5", "100", "4.5").
std::string FormatNumber(double value);
// Accepts an optional sign, digits and an optional fraction. No exponents.
std::optional<double> ParseNumber(std::string_view text);

std::string ReadFile(const std::string &path);
// Writes via a temporary file and rename so readers never see partial output.
void WriteFile(const std::string &path, std::string_view contents);

// 64-bit FNV-1a. Stable across platforms; used to derive per-item seeds.
std::uint64_t StableHash(std::string_view data,
                         std::uint64_t seed = 0xcbf29ce484222325ULL);

// Seeded generator with platform-independent draws (the standard
// distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, n). n must be positive.
  std::uint64_t Below(std::uint64_t n);
  // Uniform in [0, 1).
  double Unit();
  bool Chance(double p) { return Unit() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qasynth

#endif  // QASYNTH_TEXT_H_
