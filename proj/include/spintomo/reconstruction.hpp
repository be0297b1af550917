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

#include <optional>
#include <vector>

#include "spintomo/measurement.hpp"
#include "spintomo/protocol.hpp"
#include "spintomo/states.hpp"

namespace spintomo {

/// Solves the plan's triangular system in plan order:
///   r_P = [(1 - 2p) - sum_{Q != P} c_Q r_Q] / c_P.
/// probs[i] belongs to plan.settings[i]. Throws PlanError naming the first
/// coefficient used before it is determined.
BlochVector linear_invert(const TomographyPlan& plan, const std::vector<double>& probs);

/// Clips negative eigenvalues and renormalizes. Throws DomainError when no
/// eigenvalue is positive.
DensityMatrix psd_project(const CMatrix& h);

struct MleOptions {
  std::size_t max_iterations = 5000;
  double tolerance = 1e-9;  ///< relative log-likelihood change
  double probability_floor = 1e-12;
  bool operator==(const MleOptions&) const = default;
};

struct MleResult {
  DensityMatrix rho;
  std::vector<double> log_likelihood;  ///< one entry per accepted state, init first
  std::size_t iterations = 0;
  bool converged = false;
};

/// Log-likelihood sum_s [k log p + (N - k) log(1 - p)], with exact records
/// weighted as one shot at frequency p. Probabilities are floored.
double log_likelihood(const TomographyPlan& plan, const std::vector<ShotRecord>& records,
                      const CMatrix& rho, double floor = 1e-12);

/// Maximum-likelihood refinement over rho = T T^dag / Tr(T T^dag), updating
/// T <- (I + eps R) T with R the likelihood gradient operator and eps
/// backtracked until the likelihood does not decrease. Rank is preserved, so
/// the init should be full rank.
MleResult mle_refine(const TomographyPlan& plan, const std::vector<ShotRecord>& records,
                     const DensityMatrix& init, const MleOptions& options = {});

struct ReconstructionOptions {
  bool mle = true;
  MleOptions mle_options;
  /// Weight of I/d mixed into the projected state before MLE.
  double init_mixing = 0.05;
  bool operator==(const ReconstructionOptions&) const = default;
};

struct ReconstructionMetrics {
  double fidelity = 0.0;        ///< estimate vs truth
  double trace_distance = 0.0;  ///< estimate vs truth
  double raw_fidelity = 0.0;  ///< NaN when the raw inversion is not physical
  double raw_trace_distance = 0.0;
};

struct ReconstructionResult {
  BlochVector raw_bloch;
  DensityMatrix raw;  ///< linear inversion, possibly unphysical
  bool raw_physical = false;
  DensityMatrix projected;
  std::optional<MleResult> refined;
  std::vector<double> residuals;  ///< |p(estimate) - p_hat| per setting
  std::optional<ReconstructionMetrics> metrics;

  /// Refined state when MLE ran, otherwise the projection.
  const DensityMatrix& estimate() const { return refined ? refined->rho : projected; }
};

/// Records must hold one entry per plan setting, in plan order.
ReconstructionResult reconstruct(const TomographyPlan& plan, const std::vector<ShotRecord>& records,
                                 const ReconstructionOptions& options = {},
                                 const std::optional<DensityMatrix>& truth = std::nullopt);

}  // namespace spintomo
