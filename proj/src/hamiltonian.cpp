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

#include "spintomo/hamiltonian.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "spintomo/error.hpp"

namespace spintomo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

std::size_t axis_index(Pauli axis) {
  switch (axis) {
    case Pauli::X: return 0;
    case Pauli::Y: return 1;
    case Pauli::Z: return 2;
    default: throw Error("field axis must be x, y or z");
  }
}

constexpr Pauli kAxes[3] = {Pauli::X, Pauli::Y, Pauli::Z};

bool near(double x, double target, double tol = 1e-9) {
  return std::abs(x - target) <= tol * std::max(1.0, std::abs(target));
}

}  // namespace

void SpinHamiltonianSpec::set_field(std::size_t l, Pauli axis, double value) {
  if (l >= n) throw DimensionError("field qubit index out of range");
  eps[l][axis_index(axis)] = value;
}

void SpinHamiltonianSpec::set_coupling(std::size_t l, std::size_t m, double jx, double jy,
                                       double jz) {
  if (l >= n || m >= n || l == m) throw DimensionError("coupling needs two distinct qubits in range");
  if (l > m) std::swap(l, m);
  J[{l, m}] = {jx, jy, jz};
}

PauliPolynomial build_hamiltonian(const SpinHamiltonianSpec& spec) {
  if (spec.n == 0) throw DimensionError("Hamiltonian needs at least one qubit");
  PauliPolynomial h(spec.n);
  for (std::size_t l = 0; l < spec.n; ++l)
    for (std::size_t a = 0; a < 3; ++a)
      if (spec.eps[l][a] != 0.0) h.add(PauliString::single(spec.n, l, kAxes[a]), spec.eps[l][a]);
  for (const auto& [pair, j] : spec.J) {
    for (std::size_t a = 0; a < 3; ++a) {
      if (j[a] == 0.0) continue;
      PauliString p(spec.n);
      p.set(pair.first, kAxes[a]);
      p.set(pair.second, kAxes[a]);
      h.add(p, j[a]);
    }
  }
  return h;
}

CMatrix hamiltonian_matrix(const SpinHamiltonianSpec& spec) {
  return build_hamiltonian(spec).to_matrix();
}

CMatrix pair_hamiltonian(double jx, double jy, double jz, double eps_z) {
  SpinHamiltonianSpec s(2);
  s.set_field(0, Pauli::Z, eps_z);
  s.set_field(1, Pauli::Z, eps_z);
  s.set_coupling(0, 1, jx, jy, jz);
  return hamiltonian_matrix(s);
}

double TwoQubitParams::beta(BetaSign sign) const {
  const double dj = jx - jy;
  const double mag = t * std::sqrt(4.0 * eps_z * eps_z + dj * dj);
  if (sign == BetaSign::Signed && dj < 0.0) return -mag;
  return mag;
}

double TwoQubitParams::b() const {
  if (eps_z == 0.0) return 0.0;
  if (jx == jy) throw DomainError("closed form undefined: b = eps_z/(Jx - Jy) with Jx == Jy");
  return eps_z / (jx - jy);
}

double TwoQubitParams::a() const {
  const double bb = b();
  return 2.0 * bb + std::sqrt(4.0 * bb * bb + 1.0);
}

double TwoQubitParams::c() const {
  const double aa = a();
  return 1.0 / (1.0 + aa * aa);
}

CMatrix closed_form_u12(const TwoQubitParams& p, BetaSign sign) {
  const double g = p.gamma(), bt = p.beta(sign), ph = p.phi();
  const double a = p.a(), c = p.c();
  const cplx i{0.0, 1.0};
  const cplx ep = std::polar(1.0, ph), em = std::polar(1.0, -ph);

  const cplx c_id = 0.5 * (ep * std::cos(g) + em * std::cos(bt));
  const cplx c_z = i * (1.0 - a * a) * c / 2.0 * em * std::sin(bt);
  const cplx c_zz = 0.5 * (em * std::cos(bt) - ep * std::cos(g));
  const cplx c_xx = -0.5 * i * (ep * std::sin(g) + 2.0 * a * c * em * std::sin(bt));
  const cplx c_yy = -0.5 * i * (ep * std::sin(g) - 2.0 * a * c * em * std::sin(bt));

  auto m = [](const char* s) { return to_matrix(PauliString::parse(s)); };
  return m("00") * c_id + (m("Z0") + m("0Z")) * c_z + m("ZZ") * c_zz + m("XX") * c_xx +
         m("YY") * c_yy;
}

TwoQubitOperator two_qubit_operator(const TwoQubitParams& p, double tol) {
  TwoQubitOperator out;
  const CMatrix numeric = evolve(pair_hamiltonian(p.jx, p.jy, p.jz, p.eps_z), p.t);
  if (!p.closed_form_defined()) {
    out.u = numeric;
    out.route = U12Route::Numerical;
    out.deviation = std::numeric_limits<double>::quiet_NaN();
    out.note = "closed form inapplicable: b undefined for Jx == Jy with eps_z != 0";
    return out;
  }
  CMatrix closed = closed_form_u12(p);
  out.deviation = frobenius_distance(closed, numeric);
  if (out.deviation <= tol) {
    out.u = std::move(closed);
    out.route = U12Route::ClosedForm;
    return out;
  }
  std::ostringstream os;
  os << "parameters outside the closed form's regime (deviation " << out.deviation << ")";
  out.u = numeric;
  out.route = U12Route::Numerical;
  out.note = os.str();
  return out;
}

CMatrix u1() {
  auto m = [](const char* s) { return to_matrix(PauliString::parse(s)); };
  const cplx i{0.0, 1.0};
  CMatrix u = m("00") * cplx(kSqrt2 + 1.0) + m("ZZ") * cplx(kSqrt2 - 1.0) - m("YY") * i - m("XX") * i;
  return u * cplx(1.0 / (2.0 * kSqrt2));
}

CMatrix u2() {
  auto m = [](const char* s) { return to_matrix(PauliString::parse(s)); };
  const cplx i{0.0, 1.0};
  CMatrix u = m("00") * cplx(2.0, -1.0) - m("ZZ") * i - m("YY") * i - m("XX") * i;
  return u * cplx(1.0 / (2.0 * kSqrt2));
}

double solve_fixed_ez_time(double eps_z, double jx, int m, int n) {
  if (!(eps_z > 0.0) || !(jx > 0.0)) throw DomainError("fixed-eps_z timing needs eps_z > 0 and Jx > 0");
  if (m < 1 || n < 1) throw DomainError("fixed-eps_z timing indices m, n must be positive");
  const double ratio = eps_z / jx;
  if (near(ratio, 4.0 * m / (2.0 * n - 1.0))) return n * kPi / (2.0 * eps_z);

  int best_m = 1, best_n = 1;
  double best = std::numeric_limits<double>::infinity();
  for (int nn = 1; nn <= 64; ++nn) {
    const int mm = std::max(1, static_cast<int>(std::lround(ratio * (2.0 * nn - 1.0) / 4.0)));
    const double err = std::abs(ratio - 4.0 * mm / (2.0 * nn - 1.0));
    if (err < best) {
      best = err;
      best_m = mm;
      best_n = nn;
    }
  }
  std::ostringstream os;
  os << "eps_z/Jx = " << ratio << " does not equal 4m/(2n-1) = " << 4.0 * m / (2.0 * n - 1.0)
     << " for (m, n) = (" << m << ", " << n << "); nearest admissible (m, n) = (" << best_m << ", "
     << best_n << ") with ratio " << 4.0 * best_m / (2.0 * best_n - 1.0);
  throw DomainError(os.str());
}

double solve_xxz_times(double jz, double jx, double eps_z, int l, int m, int n) {
  if (!(jz > 0.0) || !(jx > 0.0)) throw DomainError("XXZ timing needs Jz > 0 and Jx > 0");
  if (l < 1 || m < 1 || n < 1) throw DomainError("XXZ timing indices must be positive");
  const double tau = (2.0 * m - 1.0) * kPi / (8.0 * jx);
  if (!near(jz * tau, 2.0 * n * kPi)) {
    std::ostringstream os;
    os << "no common duration: Jx tau = (2m-1) pi/8 gives tau = " << tau << " but Jz tau = "
       << jz * tau << " != 2 n pi = " << 2.0 * n * kPi << " (needs Jz/Jx = "
       << 16.0 * n / (2.0 * m - 1.0) << ")";
    throw DomainError(os.str());
  }
  if (eps_z != 0.0 && !near(eps_z * tau, l * kPi / 2.0)) {
    std::ostringstream os;
    os << "no common duration: eps_z tau = " << eps_z * tau << " != l pi/2 = " << l * kPi / 2.0
       << " (needs eps_z/Jx = " << 4.0 * l / (2.0 * m - 1.0) << ")";
    throw DomainError(os.str());
  }
  return tau;
}

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::XY: return "xy";
    case ModelKind::XXZ: return "xxz";
    case ModelKind::Heisenberg: return "heisenberg";
  }
  return "?";
}

std::string_view to_string(ParamMode m) {
  return m == ParamMode::Switchable ? "switchable" : "fixed_ez";
}

ModelKind parse_model_kind(std::string_view s) {
  if (s == "xy") return ModelKind::XY;
  if (s == "xxz") return ModelKind::XXZ;
  if (s == "heisenberg") return ModelKind::Heisenberg;
  throw ConfigError("unknown model '" + std::string(s) + "' (expected xy, xxz or heisenberg)");
}

ParamMode parse_param_mode(std::string_view s) {
  if (s == "switchable") return ParamMode::Switchable;
  if (s == "fixed_ez") return ParamMode::FixedEz;
  throw ConfigError("unknown parameter mode '" + std::string(s) +
                    "' (expected switchable or fixed_ez)");
}

std::string ModelPreset::name() const {
  return std::string(to_string(kind)) + "/" + std::string(to_string(mode));
}

ModelPreset resolve_model(const ModelConfig& cfg) {
  if (!(cfg.j > 0.0)) throw DomainError("exchange coupling J must be positive");
  ModelPreset p;
  p.kind = cfg.kind;
  p.mode = cfg.mode;
  p.jx = p.jy = cfg.j;
  switch (cfg.kind) {
    case ModelKind::XY: p.jz = cfg.jz.value_or(0.0); break;
    case ModelKind::Heisenberg: p.jz = cfg.jz.value_or(cfg.j); break;
    case ModelKind::XXZ: p.jz = cfg.jz.value_or(16.0 * cfg.j); break;
  }
  const bool fixed = cfg.mode == ParamMode::FixedEz;
  p.eps_z = fixed ? cfg.eps_z.value_or(4.0 * cfg.j) : 0.0;
  if (!fixed && cfg.eps_z.value_or(0.0) != 0.0)
    throw ConfigError("eps_z must be 0 (or unset) in switchable mode");

  if (cfg.tau) {
    p.tau = *cfg.tau;
  } else if (cfg.kind == ModelKind::XXZ) {
    p.tau = solve_xxz_times(p.jz, p.jx, p.eps_z, cfg.timing.l, cfg.timing.m, cfg.timing.n);
  } else if (fixed) {
    p.tau = solve_fixed_ez_time(p.eps_z, p.jx, cfg.timing.m, cfg.timing.n);
  } else {
    p.tau = kPi / (8.0 * p.jx);
  }
  return p;
}

SpinHamiltonianSpec pair_segment_spec(const ModelPreset& model, std::size_t n, std::size_t l,
                                      std::size_t m) {
  SpinHamiltonianSpec s(n);
  if (model.mode == ParamMode::FixedEz)
    for (std::size_t q = 0; q < n; ++q) s.set_field(q, Pauli::Z, model.eps_z);
  s.set_coupling(l, m, model.jx, model.jy, model.jz);
  return s;
}

}  // namespace spintomo
