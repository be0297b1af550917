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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace spintomo {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Sized for operators on at most ~6 qubits;
/// no expression templates, no BLAS.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  /// Row-major nested initializer, e.g. {{0, 1}, {1, 0}}.
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t dim);
  static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static CMatrix diagonal(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  CMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;

  /// max |a_ij - conj(a_ji)|; 0 for exactly Hermitian input.
  double max_asymmetry() const;
  bool is_hermitian(double tol = 1e-10) const;
  /// max entry of |U U^dag - I|.
  double unitarity_defect() const;
  bool is_unitary(double tol = 1e-10) const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Kronecker product; the left operand is the more significant factor, so
/// kron(A_qubit1, A_qubit2) puts qubit 1 leftmost.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Frobenius norm of a - b.
double frobenius_distance(const CMatrix& a, const CMatrix& b);

/// |Tr(a^dag b)| / dim. Equals 1 iff b = e^{i phi} a for unitary a, b.
double phase_overlap(const CMatrix& a, const CMatrix& b);

/// arg Tr(a^dag b): the global phase phi with b ~ e^{i phi} a.
double global_phase(const CMatrix& a, const CMatrix& b);

struct EigenSystem {
  std::vector<double> eigenvalues;  ///< ascending
  CMatrix eigenvectors;             ///< column g is the g-th eigenvector
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Throws NotHermitianError if the input deviates from Hermitian by more
/// than `tol` (the diagnostic carries the max asymmetry).
EigenSystem herm_eigen(const CMatrix& h, double tol = 1e-10);

/// exp(-i h t) for Hermitian h via the spectral form, with hbar = 1.
CMatrix evolve(const CMatrix& h, double t);

/// f(h) = V f(E) V^dag for Hermitian h and a real scalar function f.
template <typename F>
CMatrix apply_spectral(const EigenSystem& es, F&& f) {
  const auto& v = es.eigenvectors;
  const std::size_t d = v.rows();
  CMatrix out(d, d);
  for (std::size_t g = 0; g < d; ++g) {
    const cplx w = f(es.eigenvalues[g]);
    for (std::size_t r = 0; r < d; ++r) {
      const cplx vr = v(r, g) * w;
      for (std::size_t c = 0; c < d; ++c) out(r, c) += vr * std::conj(v(c, g));
    }
  }
  return out;
}

/// Lower-triangular L with L L^dag = a for Hermitian positive-definite a.
/// Pivots below `floor` are raised to `floor` instead of failing.
CMatrix cholesky_lower(const CMatrix& a, double floor = 0.0);

}  // namespace spintomo
