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
#include <map>
#include <vector>

#include "spintomo/linalg.hpp"
#include "spintomo/pauli.hpp"

namespace spintomo {

/// n-qubit density matrix in the |0> = |up>, |1> = |down> basis, qubit 1 the
/// most significant index bit.
///
/// Always Hermitian with unit trace. Positivity is *recorded*, not enforced:
/// linear inversion of noisy data legitimately produces non-physical
/// matrices, and those are carried with physical() == false until an
/// explicit projection or MLE step repairs them.
class DensityMatrix {
 public:
  static constexpr double kTol = 1e-10;

  DensityMatrix() = default;
  /// Throws DimensionError / NotHermitianError / Error(trace) on bad input.
  explicit DensityMatrix(CMatrix m);

  std::size_t qubits() const { return n_; }
  std::size_t dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }

  /// Ascending eigenvalues (computed at construction).
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  double min_eigenvalue() const { return eigenvalues_.front(); }
  /// Smallest eigenvalue >= -kTol.
  bool physical() const { return min_eigenvalue() >= -kTol; }
  double purity() const;

  static DensityMatrix maximally_mixed(std::size_t n);
  /// |basis><basis| for a computational basis index.
  static DensityMatrix basis_state(std::size_t n, std::size_t index);
  static DensityMatrix from_pure(const std::vector<cplx>& psi);

 private:
  std::size_t n_ = 0;
  CMatrix matrix_;
  std::vector<double> eigenvalues_;
};

/// Bloch coefficients r_P = Tr(rho P) over non-identity Pauli strings;
/// the identity coefficient is implicitly 1. Absent entries read as 0.
class BlochVector {
 public:
  BlochVector() = default;
  explicit BlochVector(std::size_t n) : n_(n) {}

  std::size_t qubits() const { return n_; }
  const std::map<PauliString, double>& entries() const { return r_; }
  std::size_t size() const { return r_.size(); }

  /// r of the identity string is 1.
  double get(const PauliString& p) const;
  bool contains(const PauliString& p) const { return p.is_identity() || r_.count(p) != 0; }
  /// Throws for the identity string or a qubit-count mismatch.
  void set(const PauliString& p, double value);
  double sum_squares() const;

  bool operator==(const BlochVector&) const = default;

 private:
  std::size_t n_ = 0;
  std::map<PauliString, double> r_;
};

/// 4^n - 1 computed as sum_{j=1..n} 3^j C(n, j): the number of j-qubit
/// correlation measurements summed over j.
std::uint64_t count_correlation_terms(std::size_t n);

BlochVector to_bloch(const DensityMatrix& rho);
DensityMatrix from_bloch(const BlochVector& b);

enum class StateKind { Pure, Mixed };

/// Pure: normalized complex Gaussian vector. Mixed: G G^dag / Tr(G G^dag)
/// for a complex Gaussian 2^n x 2^n matrix G. Bit-identical per seed.
DensityMatrix random_density(std::size_t n, StateKind kind, std::uint64_t seed);

/// (Tr sqrt(sqrt(a) b sqrt(a)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& a, const DensityMatrix& b);
/// (1/2) Tr |a - b|, clamped to [0, 1].
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace spintomo
