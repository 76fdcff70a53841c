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

// Dense complex operator algebra for small multi-qubit registers.
//
// Basis convention: |0> = |g>, |1> = |e> on every qubit, qubit 0 is the
// leftmost tensor factor. In this basis sigma_minus = |0><1|.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qtraj {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;

inline constexpr int kMaxQubits = 10;

// DensityMatrix validation tolerances.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = -1e-9;

namespace pauli {
Matrix2c identity();
Matrix2c x();
Matrix2c y();
Matrix2c z();
Matrix2c minus();  // sigma_-: |e> -> |g>
Matrix2c plus();   // sigma_+: |g> -> |e>
}  // namespace pauli

enum class PauliLabel : std::uint8_t { I, X, Y, Z };

/// Projective product of two Pauli labels; the phase is dropped.
PauliLabel pauli_multiply(PauliLabel a, PauliLabel b);
Matrix2c pauli_matrix(PauliLabel label);
char to_char(PauliLabel label);

/// op acting on `qubit` of an n-qubit register, identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, int qubit, int n_qubits);

/// Tensor product of one 2x2 factor per qubit, slot 0 leftmost.
ComplexMatrix tensor_product(std::span<const Matrix2c> factors);

/// c rho c^dag - 1/2 {c^dag c, rho}.
ComplexMatrix dissipator(const ComplexMatrix& c, const ComplexMatrix& rho);

/// Real eigenvalues of a Hermitian matrix, sorted descending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// max |m_ij - conj(m_ji)|.
double hermiticity_defect(const ComplexMatrix& m);

/// Tr(a b) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Single-qubit reduced density matrix of `qubit`.
Matrix2c reduced_qubit(const ComplexMatrix& rho, int qubit, int n_qubits);

/// Replaces m by (m + m^dag)/2 and rescales to unit trace. Returns the trace
/// before rescaling.
double hermitize_and_normalize(ComplexMatrix& m);

int qubit_count_for_dim(Eigen::Index dim);

struct InvariantReport {
  double hermiticity = 0.0;   // max |m - m^dag|
  double trace_error = 0.0;   // |Tr m - 1|
  double min_eigenvalue = 0.0;

  bool ok() const {
    return hermiticity <= kHermitianTol && trace_error <= kTraceTol &&
           min_eigenvalue >= kPositivityTol;
  }
};

InvariantReport check_invariants(const ComplexMatrix& m);

/// Throws NumericalError naming `context` unless m is a valid state.
void require_valid_state(const ComplexMatrix& m, std::string_view context);

/// Unit-trace, Hermitian, positive semidefinite 2^n x 2^n matrix.
class DensityMatrix {
 public:
  /// Validates the invariants; throws DimensionError or NumericalError.
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix from_pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

 private:
  ComplexMatrix m_;
  int n_qubits_ = 0;
};

/// Computational basis ket |bits>, bits read with qubit 0 leftmost.
ComplexVector basis_state(std::string_view bits);

}  // namespace qtraj
