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

#include "qtraj/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qtraj/error.hpp"

namespace qtraj {

namespace pauli {

Matrix2c identity() { return Matrix2c::Identity(); }

Matrix2c x() {
  Matrix2c m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix2c y() {
  Matrix2c m;
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

Matrix2c z() {
  Matrix2c m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix2c minus() {
  Matrix2c m;
  m << 0.0, 1.0, 0.0, 0.0;
  return m;
}

Matrix2c plus() {
  Matrix2c m;
  m << 0.0, 0.0, 1.0, 0.0;
  return m;
}

}  // namespace pauli

namespace {

// (x, z) symplectic bits; Y = XZ up to phase.
constexpr std::uint8_t kXBit[4] = {0, 1, 1, 0};
constexpr std::uint8_t kZBit[4] = {0, 0, 1, 1};

PauliLabel from_bits(std::uint8_t xb, std::uint8_t zb) {
  if (xb == 0) return zb == 0 ? PauliLabel::I : PauliLabel::Z;
  return zb == 0 ? PauliLabel::X : PauliLabel::Y;
}

void check_qubits(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw DomainError("qubit count " + std::to_string(n_qubits) + " outside [1, " +
                      std::to_string(kMaxQubits) + "]");
  }
}

}  // namespace

PauliLabel pauli_multiply(PauliLabel a, PauliLabel b) {
  const auto ia = static_cast<std::uint8_t>(a);
  const auto ib = static_cast<std::uint8_t>(b);
  return from_bits(kXBit[ia] ^ kXBit[ib], kZBit[ia] ^ kZBit[ib]);
}

Matrix2c pauli_matrix(PauliLabel label) {
  switch (label) {
    case PauliLabel::I: return pauli::identity();
    case PauliLabel::X: return pauli::x();
    case PauliLabel::Y: return pauli::y();
    case PauliLabel::Z: return pauli::z();
  }
  return pauli::identity();
}

char to_char(PauliLabel label) {
  constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
  return kNames[static_cast<std::uint8_t>(label)];
}

ComplexMatrix embed(const ComplexMatrix& op, int qubit, int n_qubits) {
  check_qubits(n_qubits);
  if (op.rows() != 2 || op.cols() != 2) {
    throw DimensionError("embed expects a 2x2 operator");
  }
  if (qubit < 0 || qubit >= n_qubits) {
    throw DomainError("qubit index " + std::to_string(qubit) + " out of range for " +
                      std::to_string(n_qubits) + " qubits");
  }
  const Eigen::Index right = Eigen::Index{1} << (n_qubits - qubit - 1);
  const Eigen::Index left = Eigen::Index{1} << qubit;
  const Eigen::Index dim = left * 2 * right;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index l = 0; l < left; ++l) {
    for (Eigen::Index r = 0; r < right; ++r) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const Complex v = op(a, b);
          if (v == Complex{}) continue;
          out((l * 2 + a) * right + r, (l * 2 + b) * right + r) = v;
        }
      }
    }
  }
  return out;
}

ComplexMatrix tensor_product(std::span<const Matrix2c> factors) {
  check_qubits(static_cast<int>(factors.size()));
  ComplexMatrix out = factors[0];
  for (std::size_t k = 1; k < factors.size(); ++k) {
    const ComplexMatrix& f = factors[k];
    ComplexMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        next.block<2, 2>(2 * i, 2 * j) = out(i, j) * f;
      }
    }
    out = std::move(next);
  }
  return out;
}

ComplexMatrix dissipator(const ComplexMatrix& c, const ComplexMatrix& rho) {
  if (c.rows() != rho.rows() || c.cols() != rho.cols() || c.rows() != c.cols()) {
    throw DimensionError("dissipator: operator and state dimensions differ");
  }
  const ComplexMatrix cdc = c.adjoint() * c;
  ComplexMatrix out = c * rho * c.adjoint();
  out.noalias() -= 0.5 * (cdc * rho);
  out.noalias() -= 0.5 * (rho * cdc);
  return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError("hermitian_eigenvalues: matrix must be square and non-empty");
  }
  if (hermiticity_defect(m) > kHermitianTol) {
    throw DomainError("hermitian_eigenvalues: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eigenvalues: eigensolver did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace_product: incompatible shapes");
  }
  return (a.transpose().array() * b.array()).sum();
}

Matrix2c reduced_qubit(const ComplexMatrix& rho, int qubit, int n_qubits) {
  check_qubits(n_qubits);
  if (rho.rows() != (Eigen::Index{1} << n_qubits) || rho.cols() != rho.rows()) {
    throw DimensionError("reduced_qubit: state dimension does not match qubit count");
  }
  if (qubit < 0 || qubit >= n_qubits) throw DomainError("reduced_qubit: qubit out of range");
  const Eigen::Index right = Eigen::Index{1} << (n_qubits - qubit - 1);
  const Eigen::Index left = Eigen::Index{1} << qubit;
  Matrix2c out = Matrix2c::Zero();
  for (Eigen::Index l = 0; l < left; ++l) {
    for (Eigen::Index r = 0; r < right; ++r) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          out(a, b) += rho((l * 2 + a) * right + r, (l * 2 + b) * right + r);
        }
      }
    }
  }
  return out;
}

double hermitize_and_normalize(ComplexMatrix& m) {
  m = (0.5 * (m + m.adjoint())).eval();
  const double tr = m.trace().real();
  if (!(tr > 1e-14)) {
    throw NumericalError("state normalization failed: trace " + std::to_string(tr));
  }
  m /= tr;
  return tr;
}

int qubit_count_for_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || n < 1) {
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  return n;
}

InvariantReport check_invariants(const ComplexMatrix& m) {
  InvariantReport report;
  report.hermiticity = hermiticity_defect(m);
  report.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  return report;
}

void require_valid_state(const ComplexMatrix& m, std::string_view context) {
  if (m.rows() != m.cols()) throw DimensionError(std::string(context) + ": state is not square");
  const InvariantReport r = check_invariants(m);
  if (!r.ok()) {
    std::ostringstream os;
    os << context << ": density-matrix invariant violated (hermiticity " << r.hermiticity
       << ", trace error " << r.trace_error << ", min eigenvalue " << r.min_eigenvalue << ")";
    throw NumericalError(os.str());
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DimensionError("density matrix must be square");
  n_qubits_ = qubit_count_for_dim(m_.rows());
  check_qubits(n_qubits_);
  require_valid_state(m_, "DensityMatrix");
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw DomainError("from_pure: zero vector");
  const ComplexVector v = psi / norm;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  check_qubits(n_qubits);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

ComplexVector basis_state(std::string_view bits) {
  check_qubits(static_cast<int>(bits.size()));
  Eigen::Index index = 0;
  for (char b : bits) {
    if (b != '0' && b != '1') throw DomainError("basis_state: expected a string of 0/1");
    index = index * 2 + (b == '1');
  }
  ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << bits.size());
  v(index) = 1.0;
  return v;
}

}  // namespace qtraj
