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

#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "spintomo/error.hpp"
#include "spintomo/protocol.hpp"

using namespace spintomo;
using namespace spintomo::testing;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kR = 1 / std::numbers::sqrt2;

ModelPreset preset(ModelKind k, ParamMode mode = ParamMode::Switchable) {
  ModelConfig c;
  c.kind = k;
  c.mode = mode;
  return resolve_model(c);
}

PauliPolynomial poly(std::size_t n, std::initializer_list<std::pair<const char*, double>> terms) {
  PauliPolynomial p(n);
  for (const auto& [s, c] : terms) p.add(PauliString::parse(s), c);
  return p;
}

// exp(-i theta s / 2) built from the definition rather than the library.
CMatrix oracle_rotation(Pauli axis, double theta) {
  return eigen_evolve(pauli_matrix(axis) * cplx(0.5), theta);
}

}  // namespace

TEST_CASE("gate tokens round-trip") {
  for (const char* tok : {"X1", "Y2", "Z3", "Xbar1", "Rx1(0.5)", "Ry2(-1.5707963267948966)", "Rz1(3)", "U12",
                          "U23", "A1[XZ](0.25)", "U(10,11)"}) {
    CHECK(Gate::parse(tok).to_string() == tok);
  }
  CHECK(Gate::parse("U12") == Gate::pair(0, 1));
  for (const char* bad : {"", "Q1", "X0", "X", "U11", "U1", "Rx1", "Rx1(abc)", "A1[XQ](1)", "X1junk"})
    CHECK_THROWS_AS(Gate::parse(bad), ConfigError);
  CHECK(PulseSequence::parse("I").empty());
  CHECK(PulseSequence().to_string() == "I");
  CHECK(PulseSequence::parse("Y1 U12 X1").to_string() == "Y1 U12 X1");
}

TEST_CASE("single-qubit gates are quarter-period rotations") {
  CHECK(frobenius_distance(compile(PulseSequence::parse("X1"), 1), oracle_rotation(Pauli::X, kPi / 2)) < 1e-12);
  CHECK(frobenius_distance(compile(PulseSequence::parse("Y1"), 1), oracle_rotation(Pauli::Y, kPi / 2)) < 1e-12);
  CHECK(frobenius_distance(compile(PulseSequence::parse("Z1"), 1), oracle_rotation(Pauli::Z, kPi / 2)) < 1e-12);
  CHECK(frobenius_distance(compile(PulseSequence::parse("Xbar1"), 1), oracle_rotation(Pauli::X, 3 * kPi / 2)) <
        1e-12);
  // X then Xbar is a full 2 pi turn: -I.
  CHECK(frobenius_distance(compile(PulseSequence::parse("X1 Xbar1"), 1), CMatrix::identity(2) * cplx(-1)) < 1e-12);
  // Qubit 1 is the most significant factor.
  CHECK(frobenius_distance(compile(PulseSequence::parse("X2"), 2),
                           kron(CMatrix::identity(2), oracle_rotation(Pauli::X, kPi / 2))) < 1e-12);
}

TEST_CASE("composite y rotation from x pulses and a z rotation") {
  for (double theta : {0.3, 1.0, 2.5}) {
    const CMatrix w = compile(PulseSequence::parse("X1 Rz1(" + std::to_string(theta) + ") Xbar1"), 1);
    const double t = std::stod(std::to_string(theta));
    CHECK(frobenius_distance(w, oracle_rotation(Pauli::Y, -t) * cplx(-1)) < 1e-12);
  }
}

TEST_CASE("axis conjugation identity for all six orderings") {
  struct Case {
    Pauli a, b, c;
    double sign;
  };
  const Case cases[] = {{Pauli::X, Pauli::Y, Pauli::Z, 1},  {Pauli::Y, Pauli::Z, Pauli::X, 1},
                        {Pauli::Z, Pauli::X, Pauli::Y, 1},  {Pauli::Y, Pauli::X, Pauli::Z, -1},
                        {Pauli::Z, Pauli::Y, Pauli::X, -1}, {Pauli::X, Pauli::Z, Pauli::Y, -1}};
  for (const auto& k : cases) {
    PulseSequence s;
    s.gates.push_back(Gate::axis_conj(0, k.a, k.b, 0.7));
    CHECK(frobenius_distance(compile(s, 1), oracle_rotation(k.c, k.sign * 0.7)) < 1e-12);
  }
}

TEST_CASE("single-qubit equivalent measurements") {
  CHECK(equivalent_measurement(PulseSequence::parse("X1"), 0, 1).approx_equal(poly(1, {{"Y", 1}}), 1e-12));
  CHECK(equivalent_measurement(PulseSequence::parse("Y1"), 0, 1).approx_equal(poly(1, {{"X", -1}}), 1e-12));
  CHECK(equivalent_measurement(PulseSequence(), 0, 1).approx_equal(poly(1, {{"Z", 1}}), 1e-12));
}

TEST_CASE("compile validates qubits and models") {
  CHECK_THROWS_AS(compile(PulseSequence::parse("X3"), 2), DimensionError);
  CHECK_THROWS_AS(compile(PulseSequence::parse("U12"), 2), Error);
  CHECK_NOTHROW(compile(PulseSequence::parse("U12"), 2, preset(ModelKind::XY)));
  CHECK(frobenius_distance(compile(PulseSequence::parse("U12"), 2, preset(ModelKind::XY)), u1()) < 1e-10);
}

TEST_CASE("two-qubit table entries against hand-derived oracles") {
  const auto xy = preset(ModelKind::XY);
  const auto he = preset(ModelKind::Heisenberg);
  const auto em = [](const char* seq, const ModelPreset& m) {
    return equivalent_measurement(PulseSequence::parse(seq), 0, 2, m);
  };
  CHECK(em("X1 U12 Y1", xy).approx_equal(poly(2, {{"Y0", kR}, {"XX", kR}}), 1e-10));
  CHECK(em("Y1 U12", xy).approx_equal(poly(2, {{"X0", -kR}, {"ZY", -kR}}), 1e-10));
  CHECK(em("Y1 U12 X2", xy).approx_equal(poly(2, {{"X0", -kR}, {"ZZ", kR}}), 1e-10));
  CHECK(em("U12", he).approx_equal(poly(2, {{"Z0", .5}, {"0Z", .5}, {"YX", .5}, {"XY", -.5}}), 1e-10));
  CHECK(em("U12 Z1 Y2", he).approx_equal(poly(2, {{"Z0", .5}, {"0X", -.5}, {"XZ", .5}, {"YY", .5}}), 1e-10));
}

TEST_CASE("table verification report") {
  const TableReport t = verify_reference_table();
  REQUIRE(t.rows.size() == 18);
  CHECK(t.all_consistent());
  CHECK(t.rows[0].status == RowStatus::Malformed);
  CHECK(t.count(RowStatus::Match) == 17);
  CHECK(t.worked_example.status == RowStatus::Mismatch);
  CHECK(t.worked_example.scaled.approx_equal(poly(2, {{"X0", -1}, {"ZY", -1}}), 1e-10));
  for (const auto& r : t.rows) {
    CHECK(std::abs(r.em.sum_squares() - 1) < 1e-10);
    for (const auto& [p, c] : r.scaled.terms()) CHECK(std::abs(std::abs(c) - 1) < 1e-10);
  }
}

TEST_CASE("three-qubit chain") {
  const auto em = equivalent_measurement(PulseSequence::parse("Y1 U12 U23"), 0, 3, preset(ModelKind::XY));
  CHECK(em.approx_equal(poly(3, {{"X00", -kR}, {"ZY0", -0.5}, {"ZZX", 0.5}}), 1e-10));
}

TEST_CASE("plans cover every coefficient triangularly") {
  for (auto kind : {ModelKind::XY, ModelKind::XXZ}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const TomographyPlan plan = plan_tomography(preset(kind), n);
      CHECK(plan.settings.size() == (std::size_t{1} << (2 * n)) - 1);
      CHECK(check_plan(plan).empty());
      for (std::size_t i = 0; i < plan.settings.size(); ++i) {
        CHECK(std::abs(plan.target_coefficient(i)) >= 0.2);
        CHECK(plan.settings[i].sequence.size() <= 4);
      }
    }
  }
  CHECK(plan_tomography(preset(ModelKind::XY, ParamMode::FixedEz), 2).settings.size() == 15);
  CHECK(plan_tomography(preset(ModelKind::Heisenberg), 2).settings.size() == 15);
}

TEST_CASE("planner reports the first uncovered target") {
  try {
    plan_tomography(preset(ModelKind::Heisenberg), 3);
    FAIL("expected PlanError");
  } catch (const PlanError& e) {
    CHECK(std::string(e.what()).find("X0X") != std::string::npos);
  }
  PlannerOptions deeper;
  deeper.max_depth = 6;
  const TomographyPlan plan = plan_tomography(preset(ModelKind::Heisenberg), 3, deeper);
  CHECK(plan.settings.size() == 63);
  CHECK(check_plan(plan).empty());
  PlannerOptions shallow;
  shallow.max_depth = 0;
  CHECK_THROWS_AS(plan_tomography(preset(ModelKind::XY), 1, shallow), PlanError);
}

TEST_CASE("planner is deterministic") {
  const auto a = plan_tomography(preset(ModelKind::XY), 2);
  const auto b = plan_tomography(preset(ModelKind::XY), 2);
  REQUIRE(a.settings.size() == b.settings.size());
  for (std::size_t i = 0; i < a.settings.size(); ++i) {
    CHECK(a.settings[i].sequence == b.settings[i].sequence);
    CHECK(a.targets[i] == b.targets[i]);
  }
}

TEST_CASE("check_plan flags broken plans") {
  TomographyPlan plan = plan_tomography(preset(ModelKind::XY), 2);
  std::swap(plan.settings.front(), plan.settings.back());
  std::swap(plan.targets.front(), plan.targets.back());
  CHECK_FALSE(check_plan(plan).empty());
  TomographyPlan short_plan = plan_tomography(preset(ModelKind::XY), 2);
  short_plan.settings.pop_back();
  short_plan.targets.pop_back();
  CHECK_FALSE(check_plan(short_plan).empty());
}
