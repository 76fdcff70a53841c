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

#include "qtraj/entangle.hpp"

#include <algorithm>
#include <cmath>

#include "qtraj/error.hpp"

namespace qtraj {

namespace {

}  // namespace

const Eigen::Matrix4cd& spin_flip() {
  static const Eigen::Matrix4cd m = [] {
    const Matrix2c sy = pauli::y();
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = sy(i, j) * sy;
    return out;
  }();
  return m;
}

double concurrence(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw DimensionError("concurrence is defined for two-qubit (4x4) states");
  }
  const Eigen::Matrix4cd h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(h);
  Eigen::Matrix4cd v = eig.eigenvectors();
  for (int k = 0; k < 4; ++k) {
    double p = eig.eigenvalues()(k);
    if (p < 0.0) {
      if (p < kPositivityTol) throw NumericalError("concurrence: state has a negative eigenvalue");
      p = 0.0;
    }
    v.col(k) *= std::sqrt(p);
  }
  const Eigen::Matrix4cd tau = v.transpose() * spin_flip() * v;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
  const Eigen::Vector4d s = svd.singularValues();  // descending
  return std::clamp(s(0) - s(1) - s(2) - s(3), 0.0, 1.0);
}

double concurrence(const DensityMatrix& rho) { return concurrence(rho.matrix()); }

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("trace_distance: dimension mismatch");
  }
  const ComplexMatrix d = a - b;
  const ComplexMatrix h = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
  return std::min(1.0, 0.5 * eig.eigenvalues().cwiseAbs().sum());
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.matrix(), b.matrix());
}

double fidelity_to_pure(const ComplexMatrix& rho, const ComplexVector& psi) {
  if (rho.rows() != psi.size() || rho.cols() != psi.size()) {
    throw DimensionError("fidelity_to_pure: dimension mismatch");
  }
  const double norm2 = psi.squaredNorm();
  return std::clamp((psi.adjoint() * rho * psi)(0, 0).real() / norm2, 0.0, 1.0);
}

double fidelity_to_pure(const DensityMatrix& rho, const ComplexVector& psi) {
  return fidelity_to_pure(rho.matrix(), psi);
}

double purity(const ComplexMatrix& rho) { return trace_product(rho, rho).real(); }

}  // namespace qtraj
