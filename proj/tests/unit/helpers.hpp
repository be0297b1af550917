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

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "spintomo/linalg.hpp"

namespace spintomo::testing {

using EMat = Eigen::MatrixXcd;

inline EMat to_eigen(const CMatrix& m) {
  EMat e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}

inline CMatrix from_eigen(const EMat& e) {
  CMatrix m(e.rows(), e.cols());
  for (Eigen::Index r = 0; r < e.rows(); ++r)
    for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
  return m;
}

inline CMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& g) {
  std::normal_distribution<double> d;
  CMatrix m(rows, cols);
  for (auto& z : m.data()) z = {d(g), d(g)};
  return m;
}

inline CMatrix random_hermitian(std::size_t dim, std::mt19937_64& g) {
  const CMatrix a = random_matrix(dim, dim, g);
  return 0.5 * (a + a.adjoint());
}

/// exp(-i h t) by Eigen's self-adjoint solver.
inline CMatrix eigen_evolve(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(h));
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<std::complex<double>>() * std::complex<double>(0, -t)).array().exp();
  return from_eigen(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
}

}  // namespace spintomo::testing
