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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spintomo/linalg.hpp"
#include "spintomo/pauli.hpp"

namespace spintomo {

/// Spin Hamiltonian with one-qubit fields and diagonal exchange couplings:
///   H = sum_l sum_a eps[l][a] s_la + sum_{l<m} sum_a J[l,m][a] s_la s_ma
/// with a in {x, y, z}. Off-diagonal couplings J^{ab}, a != b, are not
/// representable. Energies in units where hbar = 1.
struct SpinHamiltonianSpec {
  std::size_t n = 0;
  std::vector<std::array<double, 3>> eps;                               ///< [qubit][x,y,z]
  std::map<std::pair<std::size_t, std::size_t>, std::array<double, 3>> J;  ///< (l<m) -> x,y,z

  explicit SpinHamiltonianSpec(std::size_t qubits = 0) : n(qubits), eps(qubits, {0, 0, 0}) {}

  void set_field(std::size_t l, Pauli axis, double value);
  void set_coupling(std::size_t l, std::size_t m, double jx, double jy, double jz);
};

PauliPolynomial build_hamiltonian(const SpinHamiltonianSpec& spec);
CMatrix hamiltonian_matrix(const SpinHamiltonianSpec& spec);

/// Two-qubit H12 = eps_z (s1z + s2z) + Jx s1x s2x + Jy s1y s2y + Jz s1z s2z.
CMatrix pair_hamiltonian(double jx, double jy, double jz, double eps_z);

/// How the beta angle of the closed-form two-qubit evolution is signed.
///
/// The textbook form uses beta = t sqrt(4 eps_z^2 + (Jx - Jy)^2) >= 0, which
/// is exact only for Jx >= Jy: both beta-sector mixing weights lose the sign
/// of Jx - Jy. Signed multiplies beta by sgn(Jx - Jy) and is exact for every
/// real parameter set where b is defined.
enum class BetaSign { Signed, Literal };

/// Parameters of the closed-form evolution of H12 over a duration t.
struct TwoQubitParams {
  double jx = 0, jy = 0, jz = 0, eps_z = 0, t = 0;

  double gamma() const { return t * (jx + jy); }
  double beta(BetaSign sign = BetaSign::Signed) const;
  double phi() const { return t * jz; }
  /// eps_z / (Jx - Jy), taken as 0 when eps_z == 0. Throws DomainError when
  /// eps_z != 0 and Jx == Jy.
  double b() const;
  double a() const;
  double c() const;
  bool closed_form_defined() const { return eps_z == 0.0 || jx != jy; }
};

/// The five-term closed form
///   U = 1/2 (e^{i phi} cos g + e^{-i phi} cos b) I
///     + i (1 - a^2) c / 2 e^{-i phi} sin b (s1z + s2z)
///     + 1/2 (e^{-i phi} cos b - e^{i phi} cos g) s1z s2z
///     - i/2 (e^{i phi} sin g + 2ac e^{-i phi} sin b) s1x s2x
///     - i/2 (e^{i phi} sin g - 2ac e^{-i phi} sin b) s1y s2y
/// Throws DomainError where b is undefined.
CMatrix closed_form_u12(const TwoQubitParams& p, BetaSign sign = BetaSign::Signed);

enum class U12Route { ClosedForm, Numerical };

struct TwoQubitOperator {
  CMatrix u;
  U12Route route = U12Route::Numerical;
  /// Frobenius distance closed form vs. exp(-i H12 t); NaN if not computed.
  double deviation = 0.0;
  std::string note;
};

/// Operational validity: the closed form is used iff it is defined and
/// agrees with evolve(H12, t) within `tol`; otherwise the numerical
/// exponential is returned with a note explaining why.
TwoQubitOperator two_qubit_operator(const TwoQubitParams& p, double tol = 1e-8);

/// XY evolution at t = pi/(8J): [(sqrt2+1) I + (sqrt2-1) ZZ - i YY - i XX] / (2 sqrt2).
CMatrix u1();
/// Heisenberg evolution at t = pi/(8J): [(2-i) I - i ZZ - i YY - i XX] / (2 sqrt2).
CMatrix u2();

/// Duration for the fixed-eps_z protocol: requires eps_z / Jx = 4m/(2n-1)
/// (within 1e-9) and returns n pi / (2 eps_z). Throws DomainError naming the
/// nearest admissible (m, n) otherwise.
double solve_fixed_ez_time(double eps_z, double jx, int m, int n);

/// Duration for the XXZ protocol: Jx tau = (2m-1) pi/8 and Jz tau = 2 n pi,
/// plus eps_z tau = l pi/2 when eps_z != 0. Throws DomainError when the
/// constraints have no common solution.
double solve_xxz_times(double jz, double jx, double eps_z, int l, int m, int n);

enum class ModelKind { XY, XXZ, Heisenberg };
enum class ParamMode { Switchable, FixedEz };

std::string_view to_string(ModelKind k);
std::string_view to_string(ParamMode m);
ModelKind parse_model_kind(std::string_view s);
ParamMode parse_param_mode(std::string_view s);

/// Integer indices of the commensurate-timing protocols.
struct TimingIndices {
  int l = 1, m = 1, n = 1;
  bool operator==(const TimingIndices&) const = default;
};

/// User-facing model selection. Unset values take preset defaults:
/// J = 1; Jz = 0 (xy), J (heisenberg), 16 J (xxz); eps_z = 4 J in fixed_ez
/// mode and 0 otherwise; tau from the preset's timing rule.
struct ModelConfig {
  ModelKind kind = ModelKind::XY;
  ParamMode mode = ParamMode::Switchable;
  double j = 1.0;
  std::optional<double> jz;
  std::optional<double> eps_z;
  std::optional<double> tau;
  TimingIndices timing;
  bool operator==(const ModelConfig&) const = default;
};

/// Fully resolved model: couplings, the always-on z field during two-qubit
/// segments (0 in switchable mode) and the pair evolution time.
struct ModelPreset {
  ModelKind kind = ModelKind::XY;
  ParamMode mode = ParamMode::Switchable;
  double jx = 1, jy = 1, jz = 0, eps_z = 0, tau = 0;

  std::string name() const;
};

/// Applies defaults and the timing solvers; throws DomainError for
/// inadmissible parameter/timing combinations.
ModelPreset resolve_model(const ModelConfig& cfg);

/// Hamiltonian of one two-qubit segment on an n-qubit register: exchange
/// on the pair (l, m) only; in fixed_ez mode every qubit keeps eps_z s_z.
SpinHamiltonianSpec pair_segment_spec(const ModelPreset& model, std::size_t n, std::size_t l,
                                      std::size_t m);

}  // namespace spintomo
