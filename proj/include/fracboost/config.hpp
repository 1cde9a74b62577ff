// Copyright 2026 The fracboost Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "fracboost/abc.hpp"
#include "fracboost/io.hpp"
#include "fracboost/tuning.hpp"

namespace fracboost {

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input-voltage step test, run on its own (longer) horizon.
struct DisturbanceTest {
  double time = 0.15;
  double relative_step = 0.10;
  double horizon = 0.3;
};

/// A whole experiment. Defaults are the 5 V -> 12 V converter setup.
struct RunConfig {
  TuningProblem problem;
  AbcConfig abc;
  DisturbanceTest disturbance;
  ControllerKind kind = ControllerKind::Fopid;
  std::optional<FopidParams> params;  // "controller" gains, if given
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  RunConfig();

  /// Throws ConfigError on the first invalid field.
  void validate() const;

  /// problem.scenario with the disturbance step and horizon applied.
  Scenario disturbance_scenario() const;
};

/// Strict parse: unknown keys and wrong types are ConfigError.
RunConfig parse_config(const io::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Every field, including defaults; parse_config(to_json(c)) == c.
io::json to_json(const RunConfig& cfg);

}  // namespace fracboost
