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

#include "helpers.hpp"
#include "spintomo/error.hpp"
#include "spintomo/states.hpp"

using namespace spintomo;
using namespace spintomo::testing;
using Catch::Matchers::WithinAbs;

namespace {

EMat eigen_sqrt_psd(const EMat& a) {
  Eigen::SelfAdjointEigenSolver<EMat> es(a);
  Eigen::VectorXd s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.cast<std::complex<double>>().asDiagonal() * es.eigenvectors().adjoint();
}

// For pure b = |psi><psi| this is the sqrt-free <psi|a|psi> = Tr(a b).
double eigen_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  const EMat eb = to_eigen(b.matrix());
  if (std::abs((eb * eb).trace().real() - 1.0) < 1e-12) return (to_eigen(a.matrix()) * eb).trace().real();
  const EMat sa = eigen_sqrt_psd(to_eigen(a.matrix()));
  const EMat m = sa * to_eigen(b.matrix()) * sa;
  Eigen::SelfAdjointEigenSolver<EMat> es(0.5 * (m + m.adjoint()));
  const double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return t * t;
}

double eigen_trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(a.matrix() - b.matrix()));
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

TEST_CASE("maximally mixed state has a vanishing Bloch vector") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const BlochVector b = to_bloch(DensityMatrix::maximally_mixed(n));
    CHECK(b.size() == (std::size_t{1} << (2 * n)) - 1);
    for (const auto& [p, v] : b.entries()) CHECK(v == 0.0);
  }
}

TEST_CASE("|1><1| has r_z = -1") {
  const BlochVector b = to_bloch(DensityMatrix::basis_state(1, 1));
  CHECK(b.get(PauliString::parse("Z")) == -1.0);
  CHECK(b.get(PauliString::parse("X")) == 0.0);
  CHECK(b.get(PauliString::parse("Y")) == 0.0);
  CHECK(b.get(PauliString::parse("0")) == 1.0);
}

TEST_CASE("coefficient count identity 4^n - 1 = sum_j 3^j C(n, j)") {
  for (std::size_t n = 1; n <= 10; ++n) CHECK(count_correlation_terms(n) == (std::uint64_t{1} << (2 * n)) - 1);
}

TEST_CASE("Bloch round trip and coefficient bounds") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto kind = seed % 2 ? StateKind::Pure : StateKind::Mixed;
      const DensityMatrix rho = random_density(n, kind, seed);
      const BlochVector b = to_bloch(rho);
      for (const auto& [p, v] : b.entries()) CHECK(std::abs(v) <= 1.0 + 1e-12);
      CHECK(frobenius_distance(from_bloch(b).matrix(), rho.matrix()) < 1e-12);
      // Purity relation Tr(rho^2) = (1 + sum r^2) / 2^n.
      CHECK_THAT(rho.purity(), WithinAbs((1 + b.sum_squares()) / std::pow(2.0, n), 1e-12));
    }
  }
}

TEST_CASE("DensityMatrix validation") {
  CMatrix m = CMatrix::identity(2) * cplx(0.5);
  CHECK_NOTHROW(DensityMatrix(m));
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(m), NotHermitianError);
  CHECK_THROWS_AS(DensityMatrix(CMatrix::identity(2)), Error);
  CHECK_THROWS_AS(DensityMatrix(CMatrix::identity(3) * cplx(1.0 / 3)), DimensionError);
  const std::vector<double> d{1.1, -0.1};
  const DensityMatrix unphysical(CMatrix::diagonal(d));
  CHECK_FALSE(unphysical.physical());
  CHECK_THAT(unphysical.min_eigenvalue(), WithinAbs(-0.1, 1e-12));
}

TEST_CASE("random states are seeded, physical and of the requested kind") {
  const DensityMatrix a = random_density(2, StateKind::Pure, 42);
  const DensityMatrix b = random_density(2, StateKind::Pure, 42);
  CHECK(a.matrix() == b.matrix());
  CHECK_FALSE(random_density(2, StateKind::Pure, 43).matrix() == a.matrix());
  CHECK_THAT(a.purity(), WithinAbs(1.0, 1e-12));
  const DensityMatrix m = random_density(3, StateKind::Mixed, 42);
  CHECK(m.physical());
  CHECK(m.purity() < 1.0 - 1e-6);
}

TEST_CASE("fidelity and trace distance on known cases") {
  const DensityMatrix up = DensityMatrix::basis_state(1, 0), down = DensityMatrix::basis_state(1, 1);
  CHECK_THAT(fidelity(up, up), WithinAbs(1.0, 1e-12));
  CHECK_THAT(fidelity(up, down), WithinAbs(0.0, 1e-12));
  CHECK_THAT(trace_distance(up, down), WithinAbs(1.0, 1e-12));
  CHECK_THAT(trace_distance(up, up), WithinAbs(0.0, 1e-12));
  const std::vector<double> p{0.7, 0.3}, q{0.2, 0.8};
  const DensityMatrix a(CMatrix::diagonal(p)), b(CMatrix::diagonal(q));
  const double classical = std::pow(std::sqrt(0.7 * 0.2) + std::sqrt(0.3 * 0.8), 2);
  CHECK_THAT(fidelity(a, b), WithinAbs(classical, 1e-12));
  CHECK_THAT(trace_distance(a, b), WithinAbs(0.5, 1e-12));
  CHECK_THROWS_AS(fidelity(up, DensityMatrix::maximally_mixed(2)), DimensionError);
}

TEST_CASE("fidelity and trace distance agree with Eigen oracles and are symmetric") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 1 + seed % 3;
    const DensityMatrix a = random_density(n, StateKind::Mixed, seed);
    const DensityMatrix b = random_density(n, seed % 2 ? StateKind::Pure : StateKind::Mixed, seed + 100);
    CHECK_THAT(fidelity(a, b), WithinAbs(eigen_fidelity(a, b), 1e-9));
    CHECK_THAT(fidelity(a, b), WithinAbs(fidelity(b, a), 1e-9));
    CHECK_THAT(trace_distance(a, b), WithinAbs(eigen_trace_distance(a, b), 1e-10));
    // Fuchs-van de Graaf: 1 - sqrt(F) <= D <= sqrt(1 - F).
    const double f = fidelity(a, b), d = trace_distance(a, b);
    CHECK(1 - std::sqrt(f) <= d + 1e-10);
    CHECK(d <= std::sqrt(1 - f) + 1e-10);
  }
}
