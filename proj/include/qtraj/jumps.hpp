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

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qtraj/master.hpp"
#include "qtraj/qcore.hpp"
#include "qtraj/random.hpp"

namespace qtraj {

enum class JumpLabel : std::uint8_t { minus, plus, x, y, custom };

std::string_view to_string(JumpLabel label);

/// A collapse operator acting on a single qubit. `local` carries the rate,
/// sqrt(gamma) sigma, so that J^dag J dt is the jump probability operator.
struct JumpOperator {
  Matrix2c local;
  int qubit = 0;
  int n_qubits = 1;
  JumpLabel label = JumpLabel::custom;

  ComplexMatrix full() const { return embed(local, qubit, n_qubits); }
};

/// Unitary mixing matrix over the canonical jumps of one qubit.
class UnravelingTransform {
 public:
  /// Throws DomainError unless u^dag u = I to 1e-12.
  explicit UnravelingTransform(ComplexMatrix u);

  const ComplexMatrix& matrix() const { return u_; }
  Eigen::Index size() const { return u_.rows(); }

 private:
  ComplexMatrix u_;
};

struct JumpEvent {
  double time = 0.0;
  int qubit = 0;
  JumpLabel label = JumpLabel::custom;
  bool detected = true;
};

struct TrajectoryRecord {
  std::vector<JumpEvent> events;
  DensityMatrix final_state;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
};

/// Identifies which of sigma_-, sigma_+, sigma_x, sigma_y `local` is a
/// multiple of, or custom.
JumpLabel classify_jump(const Matrix2c& local);

/// sqrt(gamma_-) sigma_- and sqrt(gamma_+) sigma_+ on `qubit`, zero rates kept.
std::vector<JumpOperator> qubit_channels(const LindbladModel& model, int qubit);

/// Canonical jumps of every qubit, qubit-major, minus before plus; zero-rate
/// channels are omitted.
std::vector<JumpOperator> canonical_jumps(const LindbladModel& model);

/// J~_k = sum_i U_ki J_i for jumps that share one qubit.
std::vector<JumpOperator> transform_jumps(std::span<const JumpOperator> jumps,
                                          const UnravelingTransform& u);

/// (1/sqrt2) [[1, 1], [i, -i]]: maps {sigma_-, sigma_+} to {sigma_x, sigma_y}.
UnravelingTransform protecting_transform();

/// protecting_transform on every qubit's channel pair.
std::vector<JumpOperator> protecting_jumps(const LindbladModel& model);

/// One transform per qubit applied to that qubit's channel pair.
std::vector<JumpOperator> transformed_jumps(const LindbladModel& model,
                                            std::span<const UnravelingTransform> per_qubit);

/// J^dag J proportional to the identity.
bool is_unitary_proportional(const JumpOperator& jump, double tol = 1e-12);

/// Largest total jump probability per step before step_jump refuses.
inline constexpr double kMaxJumpProbability = 0.1;

struct JumpProbabilities {
  std::vector<double> jump;  // Tr(J^dag J rho) dt, same order as the jumps
  double no_jump = 1.0;      // 1 - sum(jump)
};

/// Throws NumericalError when the total exceeds kMaxJumpProbability.
JumpProbabilities jump_probabilities(std::span<const JumpOperator> jumps, const ComplexMatrix& rho,
                                     double dt);

/// M_NJ = 1 - dt/2 sum J^dag J.
ComplexMatrix no_jump_operator(std::span<const JumpOperator> jumps, int n_qubits, double dt);

/// Reusable single-step jump propagator.
///
/// Each step draws one uniform number and partitions [0, 1) into, per jump
/// operator in list order, a detected segment eta p_k and an undetected
/// segment (1 - eta) p_k; the remainder is the no-jump outcome.
class JumpStepper {
 public:
  JumpStepper(std::vector<JumpOperator> jumps, int n_qubits, double eta, double dt);

  /// Advances rho (in place, renormalized) by one step ending at `time`.
  std::optional<JumpEvent> step(ComplexMatrix& rho, RandomStream& rng, double time);

  const std::vector<JumpOperator>& jumps() const { return jumps_; }
  double dt() const { return dt_; }

 private:
  struct Prepared {
    ComplexMatrix j;
    ComplexMatrix j_dag;
    ComplexMatrix j_dag_j;
  };

  std::vector<JumpOperator> jumps_;
  std::vector<Prepared> prepared_;
  ComplexMatrix m_nj_;
  bool m_nj_scalar_ = false;
  double eta_;
  double dt_;
  Eigen::Index dim_;
  ComplexMatrix scratch_;
  std::vector<double> p_;
};

/// One step of jump/no-jump evolution for `model`'s efficiency.
std::pair<DensityMatrix, std::optional<JumpEvent>> step_jump(const DensityMatrix& state,
                                                             std::span<const JumpOperator> jumps,
                                                             const LindbladModel& model, double dt,
                                                             RandomStream& rng);

/// Stateful trajectory that can be advanced to arbitrary grid points.
class JumpTrajectory {
 public:
  JumpTrajectory(const LindbladModel& model, std::vector<JumpOperator> jumps,
                 const DensityMatrix& rho0, double dt, std::uint64_t seed, std::uint64_t index);

  void advance(std::size_t n_steps);

  const ComplexMatrix& state() const { return rho_; }
  std::size_t step_count() const { return step_; }
  double time() const { return static_cast<double>(step_) * stepper_.dt(); }
  const std::vector<JumpEvent>& events() const { return events_; }
  TrajectoryRecord record() const;

 private:
  JumpStepper stepper_;
  RandomStream rng_;
  ComplexMatrix rho_;
  std::size_t step_ = 0;
  std::vector<JumpEvent> events_;
  std::uint64_t seed_;
  std::uint64_t index_;
};

/// Whole trajectory on [0, t_max] using stream (seed, index).
TrajectoryRecord run_jump_trajectory(const LindbladModel& model,
                                     std::span<const JumpOperator> jumps,
                                     const DensityMatrix& rho0, double dt, double t_max,
                                     std::uint64_t seed, std::uint64_t index = 0);

}  // namespace qtraj
