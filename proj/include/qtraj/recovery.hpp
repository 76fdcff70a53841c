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

#include <span>
#include <vector>

#include "qtraj/jumps.hpp"
#include "qtraj/qcore.hpp"

namespace qtraj {

/// Per-qubit Pauli accumulated from protecting jumps, stored without phase.
class PauliFrame {
 public:
  explicit PauliFrame(int n_qubits);

  int n_qubits() const { return static_cast<int>(labels_.size()); }
  PauliLabel at(int qubit) const { return labels_.at(static_cast<std::size_t>(qubit)); }
  const std::vector<PauliLabel>& labels() const { return labels_; }

  /// Multiplies `label` into the slot of `qubit`.
  void apply(int qubit, PauliLabel label);

  /// Tensor product of the frame's Pauli matrices.
  ComplexMatrix operator_matrix() const;

  bool operator==(const PauliFrame&) const = default;

 private:
  std::vector<PauliLabel> labels_;
};

/// Observer update: rejects undetected events and non-protecting labels.
PauliFrame update_frame(const PauliFrame& frame, const JumpEvent& event);

/// Frame an observer can reconstruct from the detected events.
PauliFrame observer_frame(std::span<const JumpEvent> events, int n_qubits);

/// Frame of every event, detected or not. Not available to an observer;
/// used by oracle checks only.
PauliFrame complete_frame(std::span<const JumpEvent> events, int n_qubits);

/// P rho P for the frame's Pauli string P.
ComplexMatrix apply_frame(const ComplexMatrix& rho, const PauliFrame& frame);

/// Undo the frame: P^dag rho P (equal to P rho P for Hermitian Paulis).
DensityMatrix recover(const DensityMatrix& rho, const PauliFrame& frame);
ComplexMatrix recover(const ComplexMatrix& rho, const PauliFrame& frame);

/// Product of local unitaries applied so far, one 2x2 factor per qubit.
class LocalUnitaryFrame {
 public:
  explicit LocalUnitaryFrame(int n_qubits);

  int n_qubits() const { return static_cast<int>(factors_.size()); }
  const Matrix2c& at(int qubit) const { return factors_.at(static_cast<std::size_t>(qubit)); }
  std::span<const Matrix2c> factors() const { return factors_; }

  /// factor(qubit) <- u * factor(qubit).
  void left_multiply(int qubit, const Matrix2c& u);

  /// Replaces each factor by the nearest unitary (polar factor).
  void reunitarize();

  /// max over qubits of max |U^dag U - I|.
  double unitarity_defect() const;

  ComplexMatrix operator_matrix() const;

 private:
  std::vector<Matrix2c> factors_;
};

inline constexpr double kFrameUnitarityTol = 1e-9;

/// U^dag rho U with U the frame's tensor product.
DensityMatrix recover_unitary(const DensityMatrix& rho, const LocalUnitaryFrame& frame);
ComplexMatrix recover_unitary(const ComplexMatrix& rho, const LocalUnitaryFrame& frame);

}  // namespace qtraj
