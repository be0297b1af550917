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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spintomo/hamiltonian.hpp"
#include "spintomo/linalg.hpp"
#include "spintomo/pauli.hpp"

namespace spintomo {

enum class GateKind {
  X,         ///< exp(-i pi s_x / 4)
  Y,         ///< exp(-i pi s_y / 4)
  Z,         ///< exp(-i pi s_z / 4)
  Xbar,      ///< exp(-i 3pi s_x / 4): the x pulse held for three quarter periods
  RotX,      ///< exp(-i theta s_x / 2)
  RotY,      ///< exp(-i theta s_y / 2)
  RotZ,      ///< exp(-i theta s_z / 2)
  AxisConj,  ///< e^{-i pi s_a/4} e^{-i theta s_b/2} e^{i pi s_a/4}
  Pair,      ///< two-qubit exchange segment of the model for its time tau
};

/// One pulse. Qubit indices are 0-based internally; every text and JSON
/// rendering is 1-based ("Y1 U12").
struct Gate {
  GateKind kind = GateKind::X;
  std::size_t qubit = 0;
  std::size_t qubit2 = 0;  ///< Pair only
  double angle = 0.0;      ///< Rot* and AxisConj
  Pauli alpha = Pauli::X;  ///< AxisConj only
  Pauli beta = Pauli::Z;   ///< AxisConj only

  static Gate x(std::size_t q) { return {GateKind::X, q}; }
  static Gate y(std::size_t q) { return {GateKind::Y, q}; }
  static Gate z(std::size_t q) { return {GateKind::Z, q}; }
  static Gate xbar(std::size_t q) { return {GateKind::Xbar, q}; }
  static Gate rot_x(std::size_t q, double theta) { return {GateKind::RotX, q, 0, theta}; }
  static Gate rot_y(std::size_t q, double theta) { return {GateKind::RotY, q, 0, theta}; }
  static Gate rot_z(std::size_t q, double theta) { return {GateKind::RotZ, q, 0, theta}; }
  static Gate axis_conj(std::size_t q, Pauli alpha, Pauli beta, double theta) {
    return {GateKind::AxisConj, q, 0, theta, alpha, beta};
  }
  static Gate pair(std::size_t l, std::size_t m) { return {GateKind::Pair, l, m}; }

  bool is_pair() const { return kind == GateKind::Pair; }
  /// "X1", "Xbar2", "Rz1(0.5)", "U12", "A1[XZ](0.5)".
  std::string to_string() const;
  static Gate parse(std::string_view token);

  bool operator==(const Gate&) const = default;
};

/// Operator-product order: the RIGHTMOST gate acts first on the state, so
/// "Y1 U12" means U12 then Y1, exactly as W = Y1 U12.
struct PulseSequence {
  std::vector<Gate> gates;

  std::size_t size() const { return gates.size(); }
  bool empty() const { return gates.empty(); }
  std::size_t pair_count() const;
  /// Space-separated gate tokens; "I" for the empty sequence.
  std::string to_string() const;
  static PulseSequence parse(std::string_view text);

  bool operator==(const PulseSequence&) const = default;
};

/// exp(-i theta s_axis / 2) as a 2x2 matrix.
CMatrix rotation(Pauli axis, double theta);

/// Compiles sequences on a fixed n-qubit register, caching the pair
/// unitaries of the model.
class SequenceCompiler {
 public:
  SequenceCompiler(std::size_t n, std::optional<ModelPreset> model);

  std::size_t qubits() const { return n_; }
  const std::optional<ModelPreset>& model() const { return model_; }

  /// Full-register unitary of a single gate.
  const CMatrix& gate_matrix(const Gate& g);
  /// W = G_1 G_2 ... G_k for gates written left to right.
  CMatrix compile(const PulseSequence& seq);

 private:
  std::size_t n_;
  std::optional<ModelPreset> model_;
  std::map<std::string, CMatrix> cache_;
};

/// Convenience wrapper around SequenceCompiler. Pair gates need a model;
/// throws DimensionError for out-of-range qubits.
CMatrix compile(const PulseSequence& seq, std::size_t n,
                const std::optional<ModelPreset>& model = std::nullopt);

/// W^dag s_lz W: what a POM on qubit l after W measures on the input state.
/// The POM probability is p = (1 - sum_P c_P r_P) / 2.
PauliPolynomial equivalent_measurement(const CMatrix& w, std::size_t l);
PauliPolynomial equivalent_measurement(const PulseSequence& seq, std::size_t l, std::size_t n,
                                       const std::optional<ModelPreset>& model = std::nullopt);

struct MeasurementSetting {
  PulseSequence sequence;
  std::size_t pom_qubit = 0;  ///< 0-based
  PauliPolynomial em;         ///< W^dag s_z W at pom_qubit
  CMatrix unitary;            ///< compiled W (not serialized)
};

MeasurementSetting make_setting(SequenceCompiler& compiler, PulseSequence seq, std::size_t pom_qubit);

// ---------------------------------------------------------------------------
// Reference table of two-qubit equivalent measurements.

enum class RowStatus {
  Match,      ///< printed entry equals the computed one term by term
  SignFlip,   ///< same Pauli strings, at least one sign differs
  Mismatch,   ///< different Pauli strings
  Malformed,  ///< printed entry contains a term that is not a valid string
};

std::string_view to_string(RowStatus s);

struct TableRow {
  std::string model;       ///< "xy" or "heisenberg"
  std::string operations;  ///< e.g. "Y1 U12 X1"
  std::string printed;     ///< printed entry as text
  double scale = 1.0;      ///< sqrt(2) for xy, 2 for heisenberg
  PauliPolynomial em;      ///< computed W^dag s_1z W
  PauliPolynomial scaled;  ///< scale * em, the form the table prints
  RowStatus status = RowStatus::Match;
  std::string detail;
  /// sum c^2 == 1 and every |scaled coefficient| == 1, both within 1e-10.
  bool consistent = false;
};

struct TableReport {
  std::vector<TableRow> rows;
  /// The in-text worked example for W = Y1 U12 in the XY model, compared
  /// with the computed entry of the same operation.
  TableRow worked_example;
  bool all_consistent() const;
  std::size_t count(RowStatus s) const;
};

/// Recomputes all 18 table rows (9 XY, 9 Heisenberg) from their operation
/// strings. Discrepancies are report content; the computed entries are the
/// canonical table.
TableReport verify_reference_table();

// ---------------------------------------------------------------------------
// Planning.

struct PlannerOptions {
  std::size_t max_depth = 4;
  double min_coefficient = 0.2;
  /// POM on every qubit, or only on qubit 1.
  bool all_pom_qubits = true;
  bool operator==(const PlannerOptions&) const = default;
};

/// Settings in solve order. Setting i determines targets[i]; every other
/// term of its em is a target of an earlier setting.
struct TomographyPlan {
  std::size_t n = 0;
  ModelPreset model;
  PlannerOptions options;
  std::vector<MeasurementSetting> settings;
  std::vector<PauliString> targets;

  /// Coefficient of the target term in setting i's em.
  double target_coefficient(std::size_t i) const { return settings[i].em.coefficient(targets[i]); }
};

/// Breadth-first search over gate sequences from {X_l, Y_l, Z_l, Xbar_l,
/// U_{l,l+1}} up to options.max_depth gates. Throws PlanError naming the
/// first uncovered target.
TomographyPlan plan_tomography(const ModelPreset& model, std::size_t n,
                               const PlannerOptions& options = {});

/// Empty when the plan satisfies coverage, unit norm of every em, the
/// minimum target coefficient and triangularity; otherwise one message per
/// violation.
std::vector<std::string> check_plan(const TomographyPlan& plan);

}  // namespace spintomo
