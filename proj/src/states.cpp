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

#include "spintomo/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spintomo/error.hpp"
#include "spintomo/random.hpp"

namespace spintomo {

DensityMatrix::DensityMatrix(CMatrix m) {
  if (!m.square()) throw DimensionError("density matrix must be square");
  n_ = qubits_for_dimension(m.rows());
  const double asym = m.max_asymmetry();
  if (asym > kTol) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (max asymmetry " << asym << ")";
    throw NotHermitianError(os.str(), asym);
  }
  const cplx tr = m.trace();
  if (std::abs(tr - 1.0) > kTol) {
    std::ostringstream os;
    os << "density matrix trace is " << tr.real() << (tr.imag() < 0 ? "-" : "+")
       << std::abs(tr.imag()) << "i, expected 1";
    throw Error(os.str());
  }
  matrix_ = std::move(m);
  eigenvalues_ = herm_eigen(matrix_).eigenvalues;
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n) {
  const std::size_t d = std::size_t{1} << n;
  return DensityMatrix(CMatrix::identity(d) * cplx(1.0 / static_cast<double>(d)));
}

DensityMatrix DensityMatrix::basis_state(std::size_t n, std::size_t index) {
  const std::size_t d = std::size_t{1} << n;
  if (index >= d) throw DimensionError("basis index out of range");
  CMatrix m(d, d);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const std::vector<cplx>& psi) {
  double norm2 = 0.0;
  for (const auto& z : psi) norm2 += std::norm(z);
  if (norm2 <= 0.0) throw Error("from_pure: zero state vector");
  const std::size_t d = psi.size();
  CMatrix m(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = psi[r] * std::conj(psi[c]) / norm2;
  // Exact Hermiticity; the outer product is Hermitian up to rounding only.
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

double BlochVector::get(const PauliString& p) const {
  if (p.is_identity()) return 1.0;
  auto it = r_.find(p);
  return it == r_.end() ? 0.0 : it->second;
}

void BlochVector::set(const PauliString& p, double value) {
  if (p.size() != n_) throw DimensionError("BlochVector::set: qubit count mismatch");
  if (p.is_identity()) throw Error("the identity coefficient is fixed to 1 by normalization");
  r_[p] = value;
}

double BlochVector::sum_squares() const {
  double s = 0.0;
  for (const auto& [p, v] : r_) s += v * v;
  return s;
}

std::uint64_t count_correlation_terms(std::size_t n) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, j)
  std::uint64_t pow3 = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    binom = binom * (n - j + 1) / j;
    pow3 *= 3;
    total += pow3 * binom;
  }
  return total;
}

BlochVector to_bloch(const DensityMatrix& rho) {
  const std::size_t n = rho.qubits();
  BlochVector b(n);
  for (const auto& p : pauli_basis(n, false)) b.set(p, pauli_trace(p, rho.matrix()).real());
  return b;
}

DensityMatrix from_bloch(const BlochVector& b) {
  const std::size_t n = b.qubits();
  const std::size_t d = std::size_t{1} << n;
  CMatrix m = CMatrix::identity(d);
  for (const auto& [p, r] : b.entries()) {
    if (r == 0.0) continue;
    m += to_matrix(p) * cplx(r);
  }
  m *= 1.0 / static_cast<double>(d);
  return DensityMatrix(std::move(m));
}

DensityMatrix random_density(std::size_t n, StateKind kind, std::uint64_t seed) {
  if (n == 0) throw DimensionError("random_density needs at least one qubit");
  const std::size_t d = std::size_t{1} << n;
  Rng rng(seed);
  if (kind == StateKind::Pure) {
    std::vector<cplx> psi(d);
    for (auto& z : psi) {
      const double re = rng.normal();
      const double im = rng.normal();
      z = {re, im};
    }
    return DensityMatrix::from_pure(psi);
  }
  CMatrix g(d, d);
  for (auto& z : g.data()) {
    const double re = rng.normal();
    const double im = rng.normal();
    z = {re, im};
  }
  CMatrix m = g * g.adjoint();
  m = 0.5 * (m + m.adjoint());
  m *= 1.0 / m.trace().real();
  return DensityMatrix(std::move(m));
}

namespace {

// Eigenvalues below this are solver noise for unit-trace matrices. Root
// fidelity goes like sqrt(e) near rank deficiency, so a 1e-17 residue would
// otherwise shift F by ~1e-8.
constexpr double kSpectralFloor = 1e-14;

double floored_sqrt(double e) { return e > kSpectralFloor ? std::sqrt(e) : 0.0; }

CMatrix psd_sqrt(const CMatrix& a) { return apply_spectral(herm_eigen(a), floored_sqrt); }

}  // namespace

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.qubits() != b.qubits()) throw DimensionError("fidelity: qubit count mismatch");
  const CMatrix sa = psd_sqrt(a.matrix());
  CMatrix m = sa * b.matrix() * sa;
  m = 0.5 * (m + m.adjoint());
  double s = 0.0;
  for (double e : herm_eigen(m).eigenvalues) s += floored_sqrt(e);
  return std::clamp(s * s, 0.0, 1.0);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.qubits() != b.qubits()) throw DimensionError("trace_distance: qubit count mismatch");
  double s = 0.0;
  for (double e : herm_eigen(a.matrix() - b.matrix()).eigenvalues) s += std::abs(e);
  return std::clamp(0.5 * s, 0.0, 1.0);
}

}  // namespace spintomo
