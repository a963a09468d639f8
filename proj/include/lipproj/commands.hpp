// Copyright 2026 The lipproj Authors.
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

#ifndef LIPPROJ_COMMANDS_HPP_
#define LIPPROJ_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lipproj/error.hpp"

namespace lipproj {

inline constexpr double kAutoDelta = 1e-12;

enum class OutputFormat { kCsv, kJson };

// Everything a command needs; the seed determines every stochastic output.
struct RunConfig {
  std::string command;
  std::vector<int> ns;            // empty: command default
  std::optional<int> k;
  std::optional<double> eps;      // empty: command default
  std::optional<double> delta;
  // "auto": eps = ClosedFormEpsilon(n), delta = kAutoDelta.
  bool eps_auto = false;
  bool delta_auto = false;
  std::uint64_t seed = 1;
  std::optional<int> samples;
  std::string out;                // empty: stdout
  OutputFormat format = OutputFormat::kCsv;
  bool corrupt_tau = false;
  std::vector<int> resolutions;   // oracle; empty: {4, 8, 16}
  std::string scheme = "grid";
  int restarts = 3;
  bool timing = false;            // oracle wall-time column
};

inline constexpr const char* kCommands[] = {"bound", "table", "witness-check", "average-check",
                                            "oracle"};

// "a..b" (inclusive), "a,b,c" or "a".
std::vector<int> ParseIntList(const std::string& text);

// Overlays the keys present in `j` onto `base`. Keys: command, n, k, eps,
// delta, seed, samples, out, format, corrupt_tau, resolutions, scheme,
// restarts, timing. "auto" is accepted for eps and delta.
RunConfig ConfigFromJson(const nlohmann::json& j, RunConfig base = {});
nlohmann::json ConfigToJson(const RunConfig& config);

struct CheckRecord {
  std::string name;
  std::string anchor;    // result being certified, e.g. "Fact 3.2"
  double value = 0.0;    // sampled maximum or measured statistic
  double lower = 0.0;    // accepted interval [lower, upper]
  double upper = 0.0;
  bool passed = false;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  int samples = 0;
};

struct CommandReport {
  std::string command;
  bool passed = true;
  std::vector<CheckRecord> checks;
  std::string output;    // table or report in the requested format
  std::string summary;   // human-readable lines
  std::string failure;   // empty when passed
};

// Runs one command. Check failures are reported through `passed`/`failure`;
// invalid input throws lipproj::Error.
CommandReport RunCommand(const RunConfig& config);

// 1 check failure, 2 usage error, 3 resource error.
int ExitCodeFor(ErrorCode code);

}  // namespace lipproj

#endif  // LIPPROJ_COMMANDS_HPP_
