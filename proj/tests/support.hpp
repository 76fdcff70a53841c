// Copyright 2026 The qtraj Authors
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

// Shared helpers for the unit tests: reproducible random operators and
// independent reference implementations.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "qtraj/qcore.hpp"

namespace qtraj::testing {

inline ComplexMatrix random_matrix(std::mt19937_64& gen, Eigen::Index dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = Complex(n(gen), n(gen));
  }
  return m;
}

/// Haar-like unitary from the QR decomposition of a Ginibre matrix.
inline ComplexMatrix random_unitary(std::mt19937_64& gen, Eigen::Index dim) {
  const ComplexMatrix g = random_matrix(gen, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    q.col(k) *= d / std::abs(d);
  }
  return q;
}

/// Full-rank random density matrix G G^dag / Tr.
inline ComplexMatrix random_state(std::mt19937_64& gen, Eigen::Index dim) {
  const ComplexMatrix g = random_matrix(gen, dim);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

inline ComplexVector random_ket(std::mt19937_64& gen, Eigen::Index dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexVector v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) v(k) = Complex(n(gen), n(gen));
  return v / v.norm();
}

/// Kronecker product written out elementwise.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Wootters concurrence from the eigenvalues of rho (sy sy) rho^* (sy sy),
/// computed with a general (non-Hermitian) eigensolver.
inline double concurrence_reference(const ComplexMatrix& rho) {
  ComplexMatrix sy(2, 2);
  sy << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  const ComplexMatrix yy = kron(sy, sy);
  const ComplexMatrix r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(r);
  std::vector<double> l;
  for (Eigen::Index k = 0; k < 4; ++k) l.push_back(std::max(0.0, es.eigenvalues()(k).real()));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, std::sqrt(l[0]) - std::sqrt(l[1]) - std::sqrt(l[2]) - std::sqrt(l[3]));
}

}  // namespace qtraj::testing
