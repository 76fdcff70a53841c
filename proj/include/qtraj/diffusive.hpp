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

// Diffusive (homodyne-type) unravelings of the local Lindblad model.
//
// Each qubit alpha has two monitored channels, i in {-, +}, with complex
// Wiener increments dxi_i satisfying dxi_i dxi_j^* = delta_ij dt and
// dxi_i dxi_j = u_ij dt. The increments are built from four independent real
// increments per qubit, dW_0..dW_3, each of variance dt.

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qtraj/master.hpp"
#include "qtraj/qcore.hpp"
#include "qtraj/random.hpp"
#include "qtraj/recovery.hpp"

namespace qtraj {

inline constexpr int kNoisesPerQubit = 4;

/// Complex symmetric 2x2 matrix over channels {-, +} with spectral norm <= 1.
class NoiseCorrelation {
 public:
  /// Throws DomainError if u is not symmetric or ||u||_2 > 1 + 1e-12.
  explicit NoiseCorrelation(const Matrix2c& u);

  static NoiseCorrelation uncorrelated();
  /// u_-+ = u_+- = -1, u_-- = u_++ = 0.
  static NoiseCorrelation protecting();

  const Matrix2c& matrix() const { return u_; }
  bool is_protecting() const;

 private:
  Matrix2c u_;
};

/// 4x4 real covariance of (Re dxi_-, Im dxi_-, Re dxi_+, Im dxi_+) per unit dt.
Eigen::Matrix4d noise_covariance(const NoiseCorrelation& u);

/// Lower-triangular L with L L^T = noise_covariance(u); zero columns where the
/// covariance is singular. Throws DomainError if the covariance is not PSD.
Eigen::Matrix4d noise_factor(const NoiseCorrelation& u);

struct NoiseIncrement {
  Complex d_xi_minus;
  Complex d_xi_plus;
};

/// (dxi_-, dxi_+) from four real increments through the factor.
NoiseIncrement correlate(const Eigen::Matrix4d& factor, std::span<const double> dw);

/// Measurement record of one qubit for one step. The homodyne differences
/// are present only for the protecting correlation, where
/// Y_- = I12 + i I34 and Y_+ = -I12 + i I34.
struct CurrentSample {
  Complex y_minus;
  Complex y_plus;
  std::optional<double> i12;
  std::optional<double> i34;
};

struct HomodyneCurrents {
  double i12 = 0.0;
  double i34 = 0.0;
};

/// Inverse of combine_currents on pairs with Y_+ = -conj(Y_-); for other
/// inputs returns the least-squares representation.
HomodyneCurrents homodyne_currents(Complex y_minus, Complex y_plus);

/// Y_- = I12 + i I34, Y_+ = -I12 + i I34.
std::pair<Complex, Complex> combine_currents(double i12, double i34);

/// Deterministic part of (Y_-, Y_+) for one qubit:
/// <sqrt(g_i) s_i> + sum_j u_ij <sqrt(g_j) s_j^dag>.
std::pair<Complex, Complex> current_drift(const LindbladModel& model, const NoiseCorrelation& u,
                                          const ComplexMatrix& rho, int qubit);

/// Replaces negative eigenvalues by zero and renormalizes. Returns whether
/// anything was clipped.
bool restore_positivity(ComplexMatrix& rho);
bool restore_positivity(ComplexMatrix& rho, Eigen::SelfAdjointEigenSolver<ComplexMatrix>& solver);

enum class SmeScheme {
  /// Additive update with the symmetric second-order Ito term; linear
  /// convergence of the entanglement defect under the protecting correlation.
  milstein,
  euler_maruyama,
  /// rho -> M rho M^dag / Tr with M = I - C dt/2 + A + (A^2 - sum_k A_k^2 dt)/2,
  /// A = sum_k A_k dY_k. Positive by construction.
  kraus,
};

std::string_view to_string(SmeScheme scheme);
/// milstein, euler_maruyama or kraus; throws DomainError otherwise.
SmeScheme parse_sme_scheme(std::string_view name);

/// Stochastic master equation stepper for arbitrary admissible u. The
/// additive schemes are followed by restore_positivity, since the truncated
/// expansions leave the state cone by O(dt^{3/2}) per step.
class DiffusiveStepper {
 public:
  DiffusiveStepper(const LindbladModel& model, std::vector<NoiseCorrelation> per_qubit, double dt,
                   SmeScheme scheme = SmeScheme::milstein);

  /// Number of real increments consumed per step (4 per qubit).
  std::size_t noise_count() const { return static_cast<std::size_t>(n_qubits_) * kNoisesPerQubit; }

  /// Advances rho by one step with explicit increments (variance dt each).
  std::vector<CurrentSample> step(ComplexMatrix& rho, std::span<const double> dw);
  std::vector<CurrentSample> step(ComplexMatrix& rho, RandomStream& rng);

 private:
  void innovation(const ComplexMatrix& a, const ComplexMatrix& rho, ComplexMatrix& out) const;
  void innovation_derivative(const ComplexMatrix& a, const ComplexMatrix& rho,
                             const ComplexMatrix& direction, ComplexMatrix& out) const;

  LindbladModel model_;
  std::vector<NoiseCorrelation> correlations_;
  std::vector<Eigen::Matrix4d> factors_;
  // Embedded sum_i sqrt(g_i) conj(F_ik) s_i for each qubit and real noise k;
  // empty when the factor column is zero.
  std::vector<ComplexMatrix> unit_operators_;
  LindbladGenerator generator_;
  double dt_;
  SmeScheme scheme_;
  int n_qubits_;
  std::vector<double> draws_;
  mutable ComplexMatrix t1_, t2_;
  ComplexMatrix a_, drift_, b_, d_, acc_;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eigen_;
  ComplexMatrix static_kraus_, m_;
};

/// One SME step with the same u on every qubit.
std::pair<DensityMatrix, std::vector<CurrentSample>> step_diffusive(
    const DensityMatrix& state, const LindbladModel& model, const NoiseCorrelation& u,
    RandomStream& rng, double dt, SmeScheme scheme = SmeScheme::milstein);

/// exp(-i H) with H = sqrt(gamma/2) (dW2 sx - dW1 sy), the local stochastic
/// Hamiltonian of the protecting correlation in this basis.
Matrix2c stochastic_unitary(double gamma, double dw1, double dw2);

/// Exact local-unitary evolution for the protecting correlation. Uses the
/// first two of each qubit's four increments as dW1, dW2, matching the
/// factor of NoiseCorrelation::protecting().
class ProtectingUnitaryStepper {
 public:
  /// Throws DomainError unless gamma_- == gamma_+ on every qubit and eta == 1.
  ProtectingUnitaryStepper(const LindbladModel& model, double dt);

  std::size_t noise_count() const { return static_cast<std::size_t>(n_qubits_) * kNoisesPerQubit; }

  std::vector<CurrentSample> step(ComplexMatrix& rho, LocalUnitaryFrame& frame,
                                  std::span<const double> dw);
  std::vector<CurrentSample> step(ComplexMatrix& rho, LocalUnitaryFrame& frame,
                                  RandomStream& rng);

  /// Steps between frame re-unitarizations.
  static constexpr std::size_t kReunitarizeEvery = 1000;

 private:
  std::vector<double> gamma_;
  double dt_;
  int n_qubits_;
  std::size_t steps_ = 0;
  std::vector<double> draws_;
  std::vector<Matrix2c> locals_;
};

std::pair<DensityMatrix, LocalUnitaryFrame> step_protecting_unitary(const DensityMatrix& state,
                                                                   const LindbladModel& model,
                                                                   RandomStream& rng, double dt,
                                                                   LocalUnitaryFrame frame);

/// Fills `out` with independent N(0, dt) draws.
void draw_increments(RandomStream& rng, double dt, std::span<double> out);

}  // namespace qtraj
