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
#include "spintomo/measurement.hpp"

using namespace spintomo;
using namespace spintomo::testing;
using Catch::Matchers::WithinAbs;

namespace {

ModelPreset xy() { return resolve_model(ModelConfig{}); }

// Tr[W rho W^dag (|1><1|)_l] with the projector built by Kronecker products.
double oracle_probability(const DensityMatrix& rho, const MeasurementSetting& s) {
  const std::size_t n = rho.qubits();
  CMatrix proj = CMatrix::identity(1);
  for (std::size_t q = 0; q < n; ++q) {
    CMatrix f = CMatrix::identity(2);
    if (q == s.pom_qubit) f = CMatrix{{0, 0}, {0, 1}};
    proj = kron(proj, f);
  }
  const EMat w = to_eigen(s.unitary);
  return (w * to_eigen(rho.matrix()) * w.adjoint() * to_eigen(proj)).trace().real();
}

}  // namespace

TEST_CASE("maximally mixed input gives p = 1/2 for every setting") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto plan = plan_tomography(xy(), n);
    for (const auto& s : plan.settings)
      CHECK_THAT(exact_probability(DensityMatrix::maximally_mixed(n), s), WithinAbs(0.5, 1e-12));
  }
}

TEST_CASE("exact probabilities match a Kronecker-projector oracle") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto plan = plan_tomography(xy(), n);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const DensityMatrix rho = random_density(n, StateKind::Mixed, seed);
      for (const auto& s : plan.settings) {
        const auto paths = probability_paths(rho, s);
        CHECK(std::abs(paths.direct - paths.em) <= 1e-10);
        CHECK_THAT(exact_probability(rho, s), WithinAbs(oracle_probability(rho, s), 1e-12));
      }
    }
  }
}

TEST_CASE("a corrupted em is caught as an inconsistency") {
  SequenceCompiler c(2, xy());
  MeasurementSetting s = make_setting(c, PulseSequence::parse("Y1 U12"), 0);
  s.em = s.em.scaled(-1.0);
  CHECK_THROWS_AS(exact_probability(random_density(2, StateKind::Pure, 3), s), InconsistencyError);
}

TEST_CASE("sampling edge cases and determinism") {
  SequenceCompiler c(1, std::nullopt);
  const MeasurementSetting z = make_setting(c, PulseSequence(), 0);
  Rng rng(1);
  CHECK(sample(DensityMatrix::basis_state(1, 0), z, 0, 1000, rng).ones == 0);
  CHECK(sample(DensityMatrix::basis_state(1, 1), z, 0, 1000, rng).ones == 1000);
  CHECK_THROWS_AS(sample(DensityMatrix::basis_state(1, 1), z, 0, 0, rng), DomainError);

  Rng a(99), b(99);
  const auto ra = sample(DensityMatrix::maximally_mixed(1), z, 0, 100000, a);
  const auto rb = sample(DensityMatrix::maximally_mixed(1), z, 0, 100000, b);
  CHECK(ra == rb);
  CHECK(std::abs(ra.p_hat() - 0.5) <= 5 * std::sqrt(0.25 / 1e5));
}

TEST_CASE("sampling is unbiased over seeds") {
  SequenceCompiler c(2, xy());
  const MeasurementSetting s = make_setting(c, PulseSequence::parse("Y1 U12"), 0);
  const DensityMatrix rho = random_density(2, StateKind::Pure, 5);
  const double p = exact_probability(rho, s);
  double mean = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(derive_seed(777, seed));
    mean += sample(rho, s, 0, 10000, rng).p_hat();
  }
  mean /= 100;
  CHECK(std::abs(mean - p) <= 4 * std::sqrt(p * (1 - p) / 1e6));
}

TEST_CASE("simulate derives one stream per setting") {
  const auto plan = plan_tomography(xy(), 2);
  const DensityMatrix rho = random_density(2, StateKind::Mixed, 8);
  const auto r1 = simulate(plan, rho, 1000, 5);
  const auto r2 = simulate(plan, rho, 1000, 5);
  CHECK(r1 == r2);
  CHECK(simulate(plan, rho, 1000, 6) != r1);
  for (std::size_t i = 0; i < r1.size(); ++i) {
    Rng rng(derive_seed(5, i));
    CHECK(sample(rho, plan.settings[i], i, 1000, rng) == r1[i]);
  }
  const auto exact = simulate(plan, rho, 0, 5);
  for (std::size_t i = 0; i < exact.size(); ++i) {
    CHECK(exact[i].exact());
    CHECK(exact[i].p_hat() == exact_probability(rho, plan.settings[i]));
  }
}

TEST_CASE("spin adapters") {
  SequenceCompiler c(1, std::nullopt);
  const auto sx = make_setting(c, spin_adapter(SpinAxis::SigmaX, 0), 0);
  const auto sy = make_setting(c, spin_adapter(SpinAxis::SigmaY, 0), 0);
  CHECK(sx.em.size() == 1);
  CHECK(sy.em.size() == 1);
  CHECK_THAT(sx.em.coefficient(PauliString::parse("X")), WithinAbs(-1.0, 1e-12));
  CHECK_THAT(sy.em.coefficient(PauliString::parse("Y")), WithinAbs(-1.0, 1e-12));
  // |+x> (r_x = 1) is measured with certainty.
  const std::vector<cplx> plus{1.0, 1.0};
  CHECK_THAT(exact_probability(DensityMatrix::from_pure(plus), sx), WithinAbs(1.0, 1e-12));
  CHECK_THAT(exact_probability(DensityMatrix::maximally_mixed(1), sy), WithinAbs(0.5, 1e-12));

  // Prepended to a two-qubit sequence the adapter still yields a unit-norm em.
  SequenceCompiler c2(2, xy());
  PulseSequence seq = spin_adapter(SpinAxis::SigmaX, 0);
  for (const auto& g : PulseSequence::parse("U12").gates) seq.gates.push_back(g);
  CHECK(std::abs(make_setting(c2, seq, 0).em.sum_squares() - 1) < 1e-10);
}
