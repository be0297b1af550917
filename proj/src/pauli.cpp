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

#include "spintomo/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "spintomo/error.hpp"

namespace spintomo {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return '0';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case '0': case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: throw ConfigError(std::string("invalid Pauli label '") + c + "'");
  }
}

CMatrix pauli_matrix(Pauli p) {
  const cplx i{0.0, 1.0};
  switch (p) {
    case Pauli::I: return {{1, 0}, {0, 1}};
    case Pauli::X: return {{0, 1}, {1, 0}};
    case Pauli::Y: return {{0, -i}, {i, 0}};
    case Pauli::Z: return {{1, 0}, {0, -1}};
  }
  return {};
}

PauliString PauliString::parse(std::string_view text) {
  std::vector<Pauli> labels;
  labels.reserve(text.size());
  for (char c : text) labels.push_back(pauli_from_char(c));
  return PauliString(std::move(labels));
}

PauliString PauliString::single(std::size_t n, std::size_t qubit, Pauli axis) {
  if (qubit >= n) throw DimensionError("qubit index out of range");
  PauliString p(n);
  p.set(qubit, axis);
  return p;
}

std::size_t PauliString::weight() const {
  return static_cast<std::size_t>(
      std::count_if(labels_.begin(), labels_.end(), [](Pauli p) { return p != Pauli::I; }));
}

std::uint64_t PauliString::x_mask() const {
  std::uint64_t m = 0;
  const std::size_t n = labels_.size();
  for (std::size_t q = 0; q < n; ++q)
    if (labels_[q] == Pauli::X || labels_[q] == Pauli::Y) m |= std::uint64_t{1} << (n - 1 - q);
  return m;
}

std::uint64_t PauliString::z_mask() const {
  std::uint64_t m = 0;
  const std::size_t n = labels_.size();
  for (std::size_t q = 0; q < n; ++q)
    if (labels_[q] == Pauli::Y || labels_[q] == Pauli::Z) m |= std::uint64_t{1} << (n - 1 - q);
  return m;
}

std::string PauliString::to_string() const {
  std::string s;
  s.reserve(labels_.size());
  for (Pauli p : labels_) s.push_back(pauli_char(p));
  return s;
}

std::strong_ordering PauliString::operator<=>(const PauliString& o) const {
  if (auto c = weight() <=> o.weight(); c != 0) return c;
  return labels_ <=> o.labels_;
}

namespace {

// Single-qubit table: a*b = phase * c.
std::pair<cplx, Pauli> mul1(Pauli a, Pauli b) {
  const cplx i{0.0, 1.0};
  if (a == Pauli::I) return {1.0, b};
  if (b == Pauli::I) return {1.0, a};
  if (a == b) return {1.0, Pauli::I};
  const int ai = static_cast<int>(a), bi = static_cast<int>(b);
  const Pauli c = static_cast<Pauli>(6 - ai - bi);
  // Cyclic X->Y->Z->X gives +i.
  const bool cyclic = (bi - ai + 3) % 3 == 1;
  return {cyclic ? i : -i, c};
}

}  // namespace

PauliProduct pauli_mul(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size()) throw DimensionError("pauli_mul: length mismatch");
  PauliProduct out{1.0, PauliString(p.size())};
  for (std::size_t k = 0; k < p.size(); ++k) {
    auto [ph, r] = mul1(p[k], q[k]);
    out.phase *= ph;
    out.result.set(k, r);
  }
  return out;
}

CMatrix to_matrix(const PauliString& p) {
  if (p.size() == 0) return CMatrix::identity(1);
  CMatrix m = pauli_matrix(p[0]);
  for (std::size_t q = 1; q < p.size(); ++q) m = kron(m, pauli_matrix(p[q]));
  return m;
}

std::size_t qubits_for_dimension(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) throw DimensionError("dimension is not a power of two");
  return static_cast<std::size_t>(std::countr_zero(dim));
}

cplx pauli_trace(const PauliString& p, const CMatrix& m) {
  const std::size_t dim = m.rows();
  if (!m.square() || dim != (std::size_t{1} << p.size()))
    throw DimensionError("pauli_trace: dimension mismatch");
  const std::uint64_t xm = p.x_mask(), zm = p.z_mask();
  // P|k> = i^{#Y} (-1)^{popcount(k & zm)} |k ^ xm>.
  std::size_t ny = 0;
  for (Pauli l : p.labels()) ny += (l == Pauli::Y);
  static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx acc = 0.0;
  for (std::uint64_t k = 0; k < dim; ++k) {
    const cplx mk = m(k, k ^ xm);
    acc += (std::popcount(k & zm) & 1) ? -mk : mk;
  }
  return acc * ipow[ny % 4];
}

std::vector<PauliString> pauli_basis(std::size_t n, bool include_identity) {
  std::vector<PauliString> out;
  std::size_t count = std::size_t{1} << (2 * n);
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    PauliString p(n);
    std::size_t c = code;
    for (std::size_t q = n; q-- > 0;) {
      p.set(q, static_cast<Pauli>(c & 3));
      c >>= 2;
    }
    if (include_identity || !p.is_identity()) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double PauliPolynomial::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0.0 : it->second;
}

void PauliPolynomial::add(const PauliString& p, double c) {
  if (p.size() != n_) throw DimensionError("PauliPolynomial::add: qubit count mismatch");
  double& slot = terms_[p];
  slot += c;
  if (std::abs(slot) < kPruneTol) terms_.erase(p);
}

PauliPolynomial PauliPolynomial::scaled(double s) const {
  PauliPolynomial out(n_);
  for (const auto& [p, c] : terms_) out.add(p, c * s);
  return out;
}

double PauliPolynomial::sum_squares() const {
  double s = 0.0;
  for (const auto& [p, c] : terms_) s += c * c;
  return s;
}

std::size_t PauliPolynomial::max_weight() const {
  std::size_t w = 0;
  for (const auto& [p, c] : terms_) w = std::max(w, p.weight());
  return w;
}

CMatrix PauliPolynomial::to_matrix() const {
  const std::size_t dim = std::size_t{1} << n_;
  CMatrix m(dim, dim);
  for (const auto& [p, c] : terms_) m += spintomo::to_matrix(p) * cplx(c);
  return m;
}

std::string PauliPolynomial::to_string(int precision) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os << std::setprecision(precision);
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) os << ' ';
    first = false;
    os << (c < 0 ? '-' : '+') << std::abs(c) << '*' << p.to_string();
  }
  return os.str();
}

bool PauliPolynomial::approx_equal(const PauliPolynomial& o, double tol) const {
  if (n_ != o.n_ || terms_.size() != o.terms_.size()) return false;
  for (const auto& [p, c] : terms_) {
    auto it = o.terms_.find(p);
    if (it == o.terms_.end() || std::abs(it->second - c) > tol) return false;
  }
  return true;
}

PauliPolynomial expand(const CMatrix& m, double tol) {
  const std::size_t n = qubits_for_dimension(m.rows());
  if (!m.square()) throw DimensionError("expand: matrix is not square");
  const double asym = m.max_asymmetry();
  if (asym > tol) {
    std::ostringstream os;
    os << "expand: matrix is not Hermitian (max asymmetry " << asym
       << "); Pauli coefficients would be complex";
    throw NotHermitianError(os.str(), asym);
  }
  const double inv_dim = 1.0 / static_cast<double>(m.rows());
  PauliPolynomial out(n);
  for (const auto& p : pauli_basis(n)) {
    const double c = pauli_trace(p, m).real() * inv_dim;
    if (std::abs(c) >= PauliPolynomial::kPruneTol) out.add(p, c);
  }
  return out;
}

PauliPolynomial conjugate_expand(const CMatrix& w, const PauliString& p, double tol) {
  if (!w.square() || w.rows() != (std::size_t{1} << p.size()))
    throw DimensionError("conjugate_expand: unitary dimension does not match the Pauli string");
  const double defect = w.unitarity_defect();
  if (defect > tol) {
    std::ostringstream os;
    os << "conjugate_expand: operator is not unitary (max |W W^dag - I| = " << defect << ")";
    throw NotUnitaryError(os.str());
  }
  return expand(w.adjoint() * to_matrix(p) * w, tol);
}

}  // namespace spintomo
