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
#include <string>
#include <vector>

#include "spintomo/io.hpp"

namespace spintomo {

/// One oracle check of a verification suite.
struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  io::json body;  ///< suite-specific numbers and per-row findings

  bool ok() const;
  io::json to_json() const;
};

struct SweepStats {
  std::size_t samples = 0;
  double max_deviation = 0.0;          ///< signed-beta closed form vs evolve
  double max_deviation_literal = 0.0;  ///< unsigned-beta form vs evolve
  std::size_t literal_failures = 0;    ///< unsigned-beta deviations above 1e-8
  std::size_t zero_field_samples = 0;  ///< eps_z == 0 draws (b taken as 0)
  TwoQubitParams worst;
  double seconds = 0.0;
};

/// Random sets Jx, Jy, Jz in [0.1, 2], eps_z in [0, 2] (every tenth draw
/// eps_z = 0), t in [0, 4], all from one seeded stream.
SweepStats closed_form_sweep(std::size_t samples, std::uint64_t seed);

/// Closed form sweep plus the two fixed evolutions at t = pi/(8J).
SuiteReport verify_closed_form(std::size_t samples = 1000, std::uint64_t seed = 20260701);
/// The 18-row two-qubit table and the in-text example.
SuiteReport verify_table();
/// The three-qubit chain expansion, its probability formula, the two-qubit
/// worked probability and the second-qubit shortcut.
SuiteReport verify_three_qubit(std::size_t states = 100, std::uint64_t seed = 20260702);
/// Direct vs em-form probabilities on random (state, setting) pairs, n <= 3.
SuiteReport verify_probability_paths(std::size_t pairs = 1000, std::uint64_t seed = 20260703);

/// Scope names: table, closed-form, three-qubit, probability, all; aliases
/// table1, eq7, eq10. Throws ConfigError for anything else.
std::vector<SuiteReport> run_verification(const std::string& scope);

}  // namespace spintomo
