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

#include "spintomo/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spintomo/error.hpp"

namespace spintomo {

double ShotRecord::p_hat() const {
  if (exact()) {
    if (!p) throw Error("exact record without a probability");
    return *p;
  }
  return static_cast<double>(ones) / static_cast<double>(shots);
}

ProbabilityPaths probability_paths(const DensityMatrix& rho, const MeasurementSetting& s) {
  if (rho.dim() != s.unitary.rows())
    throw DimensionError("state and setting act on different registers");
  const std::size_t n = rho.qubits();
  const CMatrix out = s.unitary * rho.matrix() * s.unitary.adjoint();
  const std::size_t bit = std::size_t{1} << (n - 1 - s.pom_qubit);
  ProbabilityPaths paths;
  for (std::size_t k = 0; k < out.rows(); ++k)
    if (k & bit) paths.direct += out(k, k).real();
  double dot = 0.0;
  for (const auto& [p, c] : s.em.terms()) dot += c * pauli_trace(p, rho.matrix()).real();
  paths.em = 0.5 * (1.0 - dot);
  return paths;
}

double exact_probability(const DensityMatrix& rho, const MeasurementSetting& s) {
  const ProbabilityPaths paths = probability_paths(rho, s);
  if (std::abs(paths.direct - paths.em) > 1e-10) {
    std::ostringstream os;
    os << "probability paths disagree for setting " << s.sequence.to_string() << ": direct "
       << paths.direct << " vs em " << paths.em;
    throw InconsistencyError(os.str());
  }
  if (paths.direct < -1e-10 || paths.direct > 1 + 1e-10) {
    std::ostringstream os;
    os << "probability " << paths.direct << " outside [0, 1]; is the state physical?";
    throw DomainError(os.str());
  }
  return std::clamp(paths.direct, 0.0, 1.0);
}

std::uint64_t sample_binomial(double p, std::uint64_t shots, Rng& rng) {
  std::uint64_t ones = 0;
  for (std::uint64_t k = 0; k < shots; ++k) ones += rng.uniform() < p ? 1 : 0;
  return ones;
}

ShotRecord sample(const DensityMatrix& rho, const MeasurementSetting& s, std::size_t setting_index,
                  std::uint64_t shots, Rng& rng) {
  if (shots == 0) throw DomainError("sample needs at least one shot");
  ShotRecord r;
  r.setting = setting_index;
  r.shots = shots;
  r.ones = sample_binomial(exact_probability(rho, s), shots, rng);
  return r;
}

std::vector<ShotRecord> simulate(const TomographyPlan& plan, const DensityMatrix& rho,
                                 std::uint64_t shots, std::uint64_t master_seed) {
  if (rho.qubits() != plan.n) throw DimensionError("state and plan differ in qubit count");
  std::vector<ShotRecord> out;
  out.reserve(plan.settings.size());
  for (std::size_t i = 0; i < plan.settings.size(); ++i) {
    if (shots == 0) {
      ShotRecord r;
      r.setting = i;
      r.p = exact_probability(rho, plan.settings[i]);
      out.push_back(r);
    } else {
      Rng rng(derive_seed(master_seed, i));
      out.push_back(sample(rho, plan.settings[i], i, shots, rng));
    }
  }
  return out;
}

PulseSequence spin_adapter(SpinAxis axis, std::size_t l) {
  PulseSequence seq;
  if (axis == SpinAxis::SigmaX)
    seq.gates.push_back(Gate::rot_y(l, std::numbers::pi / 2));
  else
    seq.gates.push_back(Gate::rot_x(l, -std::numbers::pi / 2));
  return seq;
}

}  // namespace spintomo
