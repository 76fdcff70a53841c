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

#include "qtraj/jumps.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qtraj/error.hpp"

namespace qtraj {

std::string_view to_string(JumpLabel label) {
  switch (label) {
    case JumpLabel::minus: return "minus";
    case JumpLabel::plus: return "plus";
    case JumpLabel::x: return "x";
    case JumpLabel::y: return "y";
    case JumpLabel::custom: return "custom";
  }
  return "custom";
}

UnravelingTransform::UnravelingTransform(ComplexMatrix u) : u_(std::move(u)) {
  if (u_.rows() != u_.cols() || u_.rows() == 0) {
    throw DomainError("unraveling transform must be a non-empty square matrix");
  }
  const ComplexMatrix defect = u_.adjoint() * u_ - ComplexMatrix::Identity(u_.rows(), u_.cols());
  if (defect.cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("unraveling transform is not unitary");
  }
}

namespace {

bool proportional_to(const Matrix2c& m, const Matrix2c& basis) {
  // Scalar from the largest basis entry, then compare entrywise.
  Eigen::Index r = 0, c = 0;
  basis.cwiseAbs().maxCoeff(&r, &c);
  const Complex s = m(r, c) / basis(r, c);
  if (std::abs(s) == 0.0) return false;
  return (m - s * basis).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
}

void check_jump_set(std::span<const JumpOperator> jumps, int n_qubits) {
  for (const JumpOperator& j : jumps) {
    if (j.n_qubits != n_qubits || j.qubit < 0 || j.qubit >= n_qubits) {
      throw DimensionError("jump operator does not fit a " + std::to_string(n_qubits) +
                           "-qubit register");
    }
  }
}

}  // namespace

JumpLabel classify_jump(const Matrix2c& local) {
  if (proportional_to(local, pauli::minus())) return JumpLabel::minus;
  if (proportional_to(local, pauli::plus())) return JumpLabel::plus;
  if (proportional_to(local, pauli::x())) return JumpLabel::x;
  if (proportional_to(local, pauli::y())) return JumpLabel::y;
  return JumpLabel::custom;
}

std::vector<JumpOperator> qubit_channels(const LindbladModel& model, int qubit) {
  model.validate();
  if (qubit < 0 || qubit >= model.n_qubits) throw DomainError("qubit_channels: qubit out of range");
  const auto a = static_cast<std::size_t>(qubit);
  return {
      JumpOperator{std::sqrt(model.gamma_minus[a]) * pauli::minus(), qubit, model.n_qubits,
                   JumpLabel::minus},
      JumpOperator{std::sqrt(model.gamma_plus[a]) * pauli::plus(), qubit, model.n_qubits,
                   JumpLabel::plus},
  };
}

std::vector<JumpOperator> canonical_jumps(const LindbladModel& model) {
  std::vector<JumpOperator> out;
  for (int a = 0; a < model.n_qubits; ++a) {
    for (JumpOperator& j : qubit_channels(model, a)) {
      if (!j.local.isZero(0.0)) out.push_back(std::move(j));
    }
  }
  return out;
}

std::vector<JumpOperator> transform_jumps(std::span<const JumpOperator> jumps,
                                          const UnravelingTransform& u) {
  if (jumps.empty()) return {};
  if (static_cast<Eigen::Index>(jumps.size()) != u.size()) {
    throw DimensionError("transform size does not match the number of jumps");
  }
  for (const JumpOperator& j : jumps) {
    if (j.qubit != jumps.front().qubit || j.n_qubits != jumps.front().n_qubits) {
      throw DomainError("transform_jumps: all jumps must act on the same qubit");
    }
  }
  std::vector<JumpOperator> out;
  out.reserve(jumps.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    Matrix2c local = Matrix2c::Zero();
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      local += u.matrix()(k, i) * jumps[static_cast<std::size_t>(i)].local;
    }
    out.push_back(JumpOperator{local, jumps.front().qubit, jumps.front().n_qubits,
                               classify_jump(local)});
  }
  return out;
}

UnravelingTransform protecting_transform() {
  const double s = 1.0 / std::numbers::sqrt2;
  ComplexMatrix u(2, 2);
  u << s, s, Complex(0.0, s), Complex(0.0, -s);
  return UnravelingTransform(u);
}

std::vector<JumpOperator> transformed_jumps(const LindbladModel& model,
                                            std::span<const UnravelingTransform> per_qubit) {
  if (static_cast<int>(per_qubit.size()) != model.n_qubits) {
    throw DimensionError("transformed_jumps: need one transform per qubit");
  }
  std::vector<JumpOperator> out;
  for (int a = 0; a < model.n_qubits; ++a) {
    const std::vector<JumpOperator> channels = qubit_channels(model, a);
    for (JumpOperator& j : transform_jumps(channels, per_qubit[static_cast<std::size_t>(a)])) {
      if (!j.local.isZero(0.0)) out.push_back(std::move(j));
    }
  }
  return out;
}

std::vector<JumpOperator> protecting_jumps(const LindbladModel& model) {
  const std::vector<UnravelingTransform> u(static_cast<std::size_t>(model.n_qubits),
                                           protecting_transform());
  return transformed_jumps(model, u);
}

bool is_unitary_proportional(const JumpOperator& jump, double tol) {
  const Matrix2c jdj = jump.local.adjoint() * jump.local;
  const Complex s = 0.5 * jdj.trace();
  return (jdj - s * Matrix2c::Identity()).cwiseAbs().maxCoeff() <= tol;
}

JumpProbabilities jump_probabilities(std::span<const JumpOperator> jumps, const ComplexMatrix& rho,
                                     double dt) {
  const int n = qubit_count_for_dim(rho.rows());
  check_jump_set(jumps, n);
  JumpProbabilities out;
  out.jump.reserve(jumps.size());
  double total = 0.0;
  for (const JumpOperator& j : jumps) {
    // Tr(J^dag J rho) only involves the reduced state of the jump's qubit.
    const Matrix2c jdj = j.local.adjoint() * j.local;
    const Matrix2c reduced = reduced_qubit(rho, j.qubit, n);
    const double p = std::max(0.0, (jdj.transpose().array() * reduced.array()).sum().real() * dt);
    out.jump.push_back(p);
    total += p;
  }
  if (total > kMaxJumpProbability) {
    throw NumericalError("jump probability per step " + std::to_string(total) +
                         " exceeds 0.1; reduce dt");
  }
  out.no_jump = 1.0 - total;
  return out;
}

ComplexMatrix no_jump_operator(std::span<const JumpOperator> jumps, int n_qubits, double dt) {
  check_jump_set(jumps, n_qubits);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
  for (const JumpOperator& j : jumps) {
    m -= (0.5 * dt) * embed(j.local.adjoint() * j.local, j.qubit, n_qubits);
  }
  return m;
}

JumpStepper::JumpStepper(std::vector<JumpOperator> jumps, int n_qubits, double eta, double dt)
    : jumps_(std::move(jumps)), eta_(eta), dt_(dt), dim_(Eigen::Index{1} << n_qubits) {
  check_jump_set(jumps_, n_qubits);
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  prepared_.reserve(jumps_.size());
  for (const JumpOperator& j : jumps_) {
    Prepared p;
    p.j = j.full();
    p.j_dag = p.j.adjoint();
    p.j_dag_j = p.j_dag * p.j;
    prepared_.push_back(std::move(p));
  }
  m_nj_ = no_jump_operator(jumps_, n_qubits, dt);
  const Complex s = m_nj_(0, 0);
  m_nj_scalar_ = (m_nj_ - s * ComplexMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() == 0.0;
  scratch_.resize(dim_, dim_);
  p_.resize(jumps_.size());
}

std::optional<JumpEvent> JumpStepper::step(ComplexMatrix& rho, RandomStream& rng, double time) {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw DimensionError("step_jump: state dimension does not match the jump set");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < prepared_.size(); ++k) {
    p_[k] = std::max(0.0, trace_product(prepared_[k].j_dag_j, rho).real() * dt_);
    total += p_[k];
  }
  if (total > kMaxJumpProbability) {
    throw NumericalError("jump probability per step " + std::to_string(total) +
                         " exceeds 0.1; reduce dt");
  }

  const double r = rng.uniform();
  double edge = 0.0;
  for (std::size_t k = 0; k < prepared_.size(); ++k) {
    const double detected_end = edge + eta_ * p_[k];
    const double undetected_end = detected_end + (1.0 - eta_) * p_[k];
    if (r < undetected_end) {
      scratch_.noalias() = prepared_[k].j * rho;
      rho.noalias() = scratch_ * prepared_[k].j_dag;
      hermitize_and_normalize(rho);
      return JumpEvent{time, jumps_[k].qubit, jumps_[k].label, r < detected_end};
    }
    edge = undetected_end;
  }

  // No jump. For M_NJ proportional to the identity the normalized update is
  // the identity map.
  if (!m_nj_scalar_) {
    scratch_.noalias() = m_nj_ * rho;
    rho.noalias() = scratch_ * m_nj_;
  }
  hermitize_and_normalize(rho);
  return std::nullopt;
}

std::pair<DensityMatrix, std::optional<JumpEvent>> step_jump(const DensityMatrix& state,
                                                             std::span<const JumpOperator> jumps,
                                                             const LindbladModel& model, double dt,
                                                             RandomStream& rng) {
  model.validate();
  JumpStepper stepper(std::vector<JumpOperator>(jumps.begin(), jumps.end()), model.n_qubits,
                      model.eta, dt);
  ComplexMatrix rho = state.matrix();
  auto event = stepper.step(rho, rng, dt);
  return {DensityMatrix(std::move(rho)), event};
}

JumpTrajectory::JumpTrajectory(const LindbladModel& model, std::vector<JumpOperator> jumps,
                               const DensityMatrix& rho0, double dt, std::uint64_t seed,
                               std::uint64_t index)
    : stepper_((model.validate(), std::move(jumps)), model.n_qubits, model.eta, dt),
      rng_(seed, index),
      rho_(rho0.matrix()),
      seed_(seed),
      index_(index) {
  if (rho0.n_qubits() != model.n_qubits) {
    throw DimensionError("initial state does not match the model's qubit count");
  }
}

void JumpTrajectory::advance(std::size_t n_steps) {
  for (std::size_t s = 0; s < n_steps; ++s) {
    ++step_;
    if (auto event = stepper_.step(rho_, rng_, time())) events_.push_back(*event);
  }
}

TrajectoryRecord JumpTrajectory::record() const {
  return TrajectoryRecord{events_, DensityMatrix(rho_), seed_, index_};
}

TrajectoryRecord run_jump_trajectory(const LindbladModel& model,
                                     std::span<const JumpOperator> jumps,
                                     const DensityMatrix& rho0, double dt, double t_max,
                                     std::uint64_t seed, std::uint64_t index) {
  const TimeGrid grid = TimeGrid::make(dt, t_max);
  JumpTrajectory traj(model, std::vector<JumpOperator>(jumps.begin(), jumps.end()), rho0, dt, seed,
                      index);
  traj.advance(grid.n_steps);
  return traj.record();
}

}  // namespace qtraj
