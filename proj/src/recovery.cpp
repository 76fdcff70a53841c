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

#include "qtraj/recovery.hpp"

#include <string>

#include "qtraj/error.hpp"

namespace qtraj {

namespace {

PauliLabel frame_label(const JumpEvent& event) {
  switch (event.label) {
    case JumpLabel::x: return PauliLabel::X;
    case JumpLabel::y: return PauliLabel::Y;
    default:
      throw DomainError("jump label '" + std::string(to_string(event.label)) +
                        "' is not unitary; no frame recovery exists for it");
  }
}

void check_dims(const ComplexMatrix& rho, int n_qubits) {
  if (rho.rows() != (Eigen::Index{1} << n_qubits) || rho.cols() != rho.rows()) {
    throw DimensionError("frame and state dimensions differ");
  }
}

}  // namespace

PauliFrame::PauliFrame(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw DomainError("PauliFrame: bad qubit count");
  labels_.assign(static_cast<std::size_t>(n_qubits), PauliLabel::I);
}

void PauliFrame::apply(int qubit, PauliLabel label) {
  if (qubit < 0 || qubit >= n_qubits()) throw DomainError("PauliFrame: qubit out of range");
  auto& slot = labels_[static_cast<std::size_t>(qubit)];
  slot = pauli_multiply(label, slot);
}

ComplexMatrix PauliFrame::operator_matrix() const {
  std::vector<Matrix2c> factors;
  factors.reserve(labels_.size());
  for (PauliLabel l : labels_) factors.push_back(pauli_matrix(l));
  return tensor_product(factors);
}

PauliFrame update_frame(const PauliFrame& frame, const JumpEvent& event) {
  if (!event.detected) {
    throw DomainError("undetected jumps carry no information for the observer");
  }
  PauliFrame out = frame;
  out.apply(event.qubit, frame_label(event));
  return out;
}

PauliFrame observer_frame(std::span<const JumpEvent> events, int n_qubits) {
  PauliFrame frame(n_qubits);
  for (const JumpEvent& e : events) {
    if (e.detected) frame.apply(e.qubit, frame_label(e));
  }
  return frame;
}

PauliFrame complete_frame(std::span<const JumpEvent> events, int n_qubits) {
  PauliFrame frame(n_qubits);
  for (const JumpEvent& e : events) frame.apply(e.qubit, frame_label(e));
  return frame;
}

ComplexMatrix apply_frame(const ComplexMatrix& rho, const PauliFrame& frame) {
  check_dims(rho, frame.n_qubits());
  const ComplexMatrix p = frame.operator_matrix();
  return p * rho * p.adjoint();
}

ComplexMatrix recover(const ComplexMatrix& rho, const PauliFrame& frame) {
  check_dims(rho, frame.n_qubits());
  const ComplexMatrix p = frame.operator_matrix();
  return p.adjoint() * rho * p;
}

DensityMatrix recover(const DensityMatrix& rho, const PauliFrame& frame) {
  return DensityMatrix(recover(rho.matrix(), frame));
}

LocalUnitaryFrame::LocalUnitaryFrame(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw DomainError("LocalUnitaryFrame: bad qubit count");
  }
  factors_.assign(static_cast<std::size_t>(n_qubits), Matrix2c::Identity());
}

void LocalUnitaryFrame::left_multiply(int qubit, const Matrix2c& u) {
  if (qubit < 0 || qubit >= n_qubits()) throw DomainError("LocalUnitaryFrame: qubit out of range");
  auto& f = factors_[static_cast<std::size_t>(qubit)];
  f = (u * f).eval();
}

void LocalUnitaryFrame::reunitarize() {
  for (Matrix2c& f : factors_) {
    Eigen::JacobiSVD<Matrix2c> svd(f, Eigen::ComputeFullU | Eigen::ComputeFullV);
    f = svd.matrixU() * svd.matrixV().adjoint();
  }
}

double LocalUnitaryFrame::unitarity_defect() const {
  double worst = 0.0;
  for (const Matrix2c& f : factors_) {
    worst = std::max(worst, (f.adjoint() * f - Matrix2c::Identity()).cwiseAbs().maxCoeff());
  }
  return worst;
}

ComplexMatrix LocalUnitaryFrame::operator_matrix() const { return tensor_product(factors_); }

ComplexMatrix recover_unitary(const ComplexMatrix& rho, const LocalUnitaryFrame& frame) {
  check_dims(rho, frame.n_qubits());
  if (frame.unitarity_defect() > kFrameUnitarityTol) {
    throw NumericalError("local unitary frame drifted from unitarity");
  }
  const ComplexMatrix u = frame.operator_matrix();
  return u.adjoint() * rho * u;
}

DensityMatrix recover_unitary(const DensityMatrix& rho, const LocalUnitaryFrame& frame) {
  return DensityMatrix(recover_unitary(rho.matrix(), frame));
}

}  // namespace qtraj
