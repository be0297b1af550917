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

#include "spintomo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spintomo/error.hpp"

namespace spintomo {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
  CMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

cplx CMatrix::trace() const {
  if (!square()) throw DimensionError("trace of a non-square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double CMatrix::max_asymmetry() const {
  if (!square()) throw DimensionError("Hermiticity check on a non-square matrix");
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return worst;
}

bool CMatrix::is_hermitian(double tol) const { return square() && max_asymmetry() <= tol; }

double CMatrix::unitarity_defect() const {
  if (!square()) throw DimensionError("unitarity check on a non-square matrix");
  const CMatrix p = (*this) * adjoint();
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      worst = std::max(worst, std::abs(p(r, c) - (r == c ? 1.0 : 0.0)));
  return worst;
}

bool CMatrix::is_unitary(double tol) const { return square() && unitarity_defect() <= tol; }

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix difference shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) {
    std::ostringstream os;
    os << "matrix product shape mismatch: " << a.rows_ << "x" << a.cols_ << " * " << b.rows_
       << "x" << b.cols_;
    throw DimensionError(os.str());
  }
  CMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  if (a.empty() || b.empty()) throw DimensionError("kron of an empty matrix");
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) { return (a - b).frobenius_norm(); }

double phase_overlap(const CMatrix& a, const CMatrix& b) {
  return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

double global_phase(const CMatrix& a, const CMatrix& b) { return std::arg((a.adjoint() * b).trace()); }

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p, q). With a_pq = |a_pq| e^{i phi},
// the block equals D^dag B D for D = diag(1, e^{i phi}) and a real symmetric
// B, so J = D^dag R diagonalizes it where R is the real Jacobi rotation of B.
void rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cplx phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on columns p, q.
  const cplx j00 = c, j01 = s;
  const cplx j10 = -s * std::conj(phase), j11 = c * std::conj(phase);
  const std::size_t d = a.rows();
  for (std::size_t k = 0; k < d; ++k) {  // A <- A J
    const cplx akp = a(k, p), akq = a(k, q);
    a(k, p) = akp * j00 + akq * j10;
    a(k, q) = akp * j01 + akq * j11;
  }
  for (std::size_t k = 0; k < d; ++k) {  // A <- J^dag A
    const cplx apk = a(p, k), aqk = a(q, k);
    a(p, k) = std::conj(j00) * apk + std::conj(j10) * aqk;
    a(q, k) = std::conj(j01) * apk + std::conj(j11) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (std::size_t k = 0; k < d; ++k) {  // V <- V J
    const cplx vkp = v(k, p), vkq = v(k, q);
    v(k, p) = vkp * j00 + vkq * j10;
    v(k, q) = vkp * j01 + vkq * j11;
  }
}

}  // namespace

EigenSystem herm_eigen(const CMatrix& h, double tol) {
  if (!h.square() || h.empty()) throw DimensionError("herm_eigen needs a nonempty square matrix");
  const double asym = h.max_asymmetry();
  if (asym > tol) {
    std::ostringstream os;
    os << "herm_eigen: input is not Hermitian (max |h_ij - conj(h_ji)| = " << asym << ")";
    throw NotHermitianError(os.str(), asym);
  }
  const std::size_t d = h.rows();
  // Work on the exactly Hermitian part so rounding asymmetry does not leak in.
  CMatrix a = 0.5 * (h + h.adjoint());
  CMatrix v = CMatrix::identity(d);
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-15 * scale) break;
    for (std::size_t p = 0; p + 1 < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  EigenSystem es;
  es.eigenvalues.resize(d);
  es.eigenvectors = CMatrix(d, d);
  for (std::size_t g = 0; g < d; ++g) {
    es.eigenvalues[g] = a(order[g], order[g]).real();
    for (std::size_t r = 0; r < d; ++r) es.eigenvectors(r, g) = v(r, order[g]);
  }
  return es;
}

CMatrix evolve(const CMatrix& h, double t) {
  const EigenSystem es = herm_eigen(h);
  return apply_spectral(es, [t](double e) { return std::polar(1.0, -e * t); });
}

CMatrix cholesky_lower(const CMatrix& a, double floor) {
  if (!a.square()) throw DimensionError("cholesky of a non-square matrix");
  const std::size_t d = a.rows();
  CMatrix l(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    double diag = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l(j, k));
    if (diag <= floor) {
      if (floor <= 0.0) throw DomainError("cholesky: matrix is not positive definite");
      diag = floor;
    }
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < d; ++i) {
      cplx s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

}  // namespace spintomo
