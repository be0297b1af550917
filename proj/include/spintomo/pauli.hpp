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

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spintomo/linalg.hpp"

namespace spintomo {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// '0', 'X', 'Y', 'Z'.
char pauli_char(Pauli p);
Pauli pauli_from_char(char c);
CMatrix pauli_matrix(Pauli p);

/// Tensor product of per-qubit Pauli labels, qubit 1 first. Unsigned: phases
/// live in PauliProduct / PauliPolynomial coefficients.
class PauliString {
 public:
  PauliString() = default;
  /// All-identity string on n qubits.
  explicit PauliString(std::size_t n) : labels_(n, Pauli::I) {}
  explicit PauliString(std::vector<Pauli> labels) : labels_(std::move(labels)) {}

  /// Parses "ZX0"-style text (qubit 1 first). Accepts lower case and 'I'.
  static PauliString parse(std::string_view text);
  /// sigma_axis on `qubit` (0-based), identity elsewhere.
  static PauliString single(std::size_t n, std::size_t qubit, Pauli axis);

  std::size_t size() const { return labels_.size(); }
  std::size_t weight() const;
  bool is_identity() const { return weight() == 0; }
  Pauli operator[](std::size_t q) const { return labels_[q]; }
  void set(std::size_t q, Pauli p) { labels_[q] = p; }
  const std::vector<Pauli>& labels() const { return labels_; }

  /// Bit masks in matrix-index convention (qubit 1 is the most significant
  /// bit). x_mask marks X/Y factors, z_mask marks Y/Z factors.
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;

  std::string to_string() const;

  bool operator==(const PauliString&) const = default;
  /// Canonical order: by weight, then labels lexicographically (0 < X < Y < Z).
  std::strong_ordering operator<=>(const PauliString& o) const;

 private:
  std::vector<Pauli> labels_;
};

struct PauliProduct {
  cplx phase;  ///< one of +-1, +-i
  PauliString result;
};

/// p * q = phase * result.
PauliProduct pauli_mul(const PauliString& p, const PauliString& q);

CMatrix to_matrix(const PauliString& p);

/// Real Tr(P m) computed from the Pauli's permutation structure, O(2^n).
cplx pauli_trace(const PauliString& p, const CMatrix& m);

/// Every Pauli string on n qubits in canonical order; the identity first.
std::vector<PauliString> pauli_basis(std::size_t n, bool include_identity = true);

/// Real linear combination of Pauli strings on a fixed number of qubits.
class PauliPolynomial {
 public:
  static constexpr double kPruneTol = 1e-12;
  using Terms = std::map<PauliString, double>;

  PauliPolynomial() = default;
  explicit PauliPolynomial(std::size_t n) : n_(n) {}

  std::size_t qubits() const { return n_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// 0 when the string is absent.
  double coefficient(const PauliString& p) const;
  bool contains(const PauliString& p) const { return terms_.count(p) != 0; }
  /// Accumulates; removes the entry if the sum falls below kPruneTol.
  void add(const PauliString& p, double c);
  PauliPolynomial scaled(double s) const;
  double sum_squares() const;
  std::size_t max_weight() const;

  CMatrix to_matrix() const;
  /// e.g. "-0.707107*X0 -0.707107*ZY"; "0" for the empty polynomial.
  std::string to_string(int precision = 6) const;

  /// Same term set and every coefficient within tol.
  bool approx_equal(const PauliPolynomial& o, double tol) const;
  bool operator==(const PauliPolynomial&) const = default;

 private:
  std::size_t n_ = 0;
  Terms terms_;
};

/// Pauli-basis expansion c_P = Tr(P m) / 2^n of a Hermitian 2^n x 2^n matrix.
/// Throws NotHermitianError otherwise.
PauliPolynomial expand(const CMatrix& m, double tol = 1e-10);

/// Expansion of W^dag P W. Throws NotUnitaryError for non-unitary w.
PauliPolynomial conjugate_expand(const CMatrix& w, const PauliString& p, double tol = 1e-10);

/// Qubit count for a 2^n-dimensional square matrix; throws otherwise.
std::size_t qubits_for_dimension(std::size_t dim);

}  // namespace spintomo
