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
#include <optional>
#include <vector>

#include "spintomo/protocol.hpp"
#include "spintomo/random.hpp"
#include "spintomo/states.hpp"

namespace spintomo {

/// Outcome counts of one setting. shots == 0 marks an exact record that
/// carries the probability itself instead of counts.
struct ShotRecord {
  std::size_t setting = 0;
  std::uint64_t shots = 0;
  std::uint64_t ones = 0;  ///< |1> outcomes of the POM
  std::optional<double> p;  ///< exact records only

  bool exact() const { return shots == 0; }
  double p_hat() const;
  bool operator==(const ShotRecord&) const = default;
};

/// The two independent evaluations of a POM probability.
struct ProbabilityPaths {
  double direct = 0.0;  ///< Tr[W rho W^dag (|1><1|)_l]
  double em = 0.0;      ///< (1 - sum_P c_P r_P) / 2
};

ProbabilityPaths probability_paths(const DensityMatrix& rho, const MeasurementSetting& s);

/// Direct-path probability, clamped to [0, 1]. Throws InconsistencyError if
/// the paths differ by more than 1e-10, DimensionError on size mismatch.
double exact_probability(const DensityMatrix& rho, const MeasurementSetting& s);

/// Binomial(shots, p) by counting Bernoulli draws u < p.
std::uint64_t sample_binomial(double p, std::uint64_t shots, Rng& rng);

ShotRecord sample(const DensityMatrix& rho, const MeasurementSetting& s, std::size_t setting_index,
                  std::uint64_t shots, Rng& rng);

/// One record per plan setting; setting i draws from derive_seed(master_seed, i).
/// shots == 0 yields exact records.
std::vector<ShotRecord> simulate(const TomographyPlan& plan, const DensityMatrix& rho,
                                 std::uint64_t shots, std::uint64_t master_seed);

enum class SpinAxis { SigmaX, SigmaY };

/// Gates to prepend (leftmost) to a sequence so that the POM on qubit l
/// measures s_x or s_y: Y_l(pi/2) for s_x, X_l(-pi/2) for s_y. With an empty
/// sequence the em is -s_lx or -s_ly respectively, so p is the probability
/// of spin up along that axis.
PulseSequence spin_adapter(SpinAxis axis, std::size_t l);

}  // namespace spintomo
