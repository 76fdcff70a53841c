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

#include "qtraj/qcore.hpp"

namespace qtraj {

/// Wootters concurrence of a two-qubit state, in [0, 1].
///
/// Uses the equivalent formulation C = max(0, s1 - s2 - s3 - s4) with s the
/// singular values of tau = V^T (sy x sy) V, where rho = V V^dag. The s_i are
/// the square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy) but are
/// obtained without taking square roots of near-zero eigenvalues.
double concurrence(const ComplexMatrix& rho);
double concurrence(const DensityMatrix& rho);

/// Half the trace norm of a - b.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// <psi|rho|psi> for normalized psi.
double fidelity_to_pure(const ComplexMatrix& rho, const ComplexVector& psi);
double fidelity_to_pure(const DensityMatrix& rho, const ComplexVector& psi);

/// Tr(rho^2).
double purity(const ComplexMatrix& rho);

/// sy x sy in the computational basis.
const Eigen::Matrix4cd& spin_flip();

}  // namespace qtraj
