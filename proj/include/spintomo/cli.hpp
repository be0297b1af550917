// Copyright 2026 The spintomo Authors
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
#include <string>
#include <vector>

#include "spintomo/io.hpp"
#include "spintomo/verify.hpp"

namespace spintomo::cli {

enum class ExitCode : int { Ok = 0, VerificationFailure = 1, Usage = 2, Io = 3 };

enum class StateSourceKind { RandomPure, RandomMixed, File };

struct StateSource {
  StateSourceKind kind = StateSourceKind::RandomPure;
  std::uint64_t seed = 1;
  std::string path;  ///< File only
  bool operator==(const StateSource&) const = default;
};

struct RunConfig {
  ModelConfig model;
  std::size_t n = 2;
  StateSource state;
  std::uint64_t shots = 0;  ///< per setting; 0 = exact probabilities
  std::uint64_t seed = 1;   ///< master seed for sampling
  PlannerOptions planner;
  ReconstructionOptions reconstruction;
  std::string out = "out";
  bool operator==(const RunConfig&) const = default;
};

/// Missing keys take the defaults above. Throws ConfigError on unknown
/// keys, bad values or unsupported model/mode combinations.
RunConfig config_from_json(const io::json& j);
io::json config_to_json(const RunConfig& c);

/// Ground-truth state named by the config.
DensityMatrix load_state(const RunConfig& c);

inline constexpr const char* kPlanFile = "plan.json";
inline constexpr const char* kRecordsFile = "records.jsonl";
inline constexpr const char* kReportFile = "report.json";

TomographyPlan cmd_plan(const RunConfig& c);
io::RecordsFile cmd_simulate(const RunConfig& c, const TomographyPlan& plan);
io::json cmd_reconstruct(const RunConfig& c, const TomographyPlan& plan, const io::RecordsFile& records);
io::json cmd_pipeline(const RunConfig& c);

/// Runs the suites and returns Ok iff every check passes.
ExitCode cmd_verify(const std::string& scope, const std::optional<std::filesystem::path>& out_dir);

/// Entry point of the command-line tool.
int run(int argc, char** argv);

}  // namespace spintomo::cli
