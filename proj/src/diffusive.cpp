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

#include "qtraj/diffusive.hpp"

#include <cmath>
#include <string>

#include "qtraj/error.hpp"

namespace qtraj {

namespace {

constexpr double kPsdTol = 1e-12;

Matrix2c protecting_matrix() {
  Matrix2c u;
  u << 0.0, -1.0, -1.0, 0.0;
  return u;
}

void require_perfect_detection(const LindbladModel& model) {
  if (model.eta != 1.0) {
    throw DomainError("diffusive unravelings are modeled for perfect detection (eta = 1)");
  }
}

}  // namespace

std::string_view to_string(SmeScheme scheme) {
  switch (scheme) {
    case SmeScheme::milstein:
      return "milstein";
    case SmeScheme::euler_maruyama:
      return "euler_maruyama";
    case SmeScheme::kraus:
      return "kraus";
  }
  return "unknown";
}

SmeScheme parse_sme_scheme(std::string_view name) {
  if (name == "milstein") return SmeScheme::milstein;
  if (name == "euler_maruyama") return SmeScheme::euler_maruyama;
  if (name == "kraus") return SmeScheme::kraus;
  throw DomainError("unknown SME scheme '" + std::string(name) + "'");
}

bool restore_positivity(ComplexMatrix& rho, Eigen::SelfAdjointEigenSolver<ComplexMatrix>& solver) {
  solver.compute(rho);
  const Eigen::VectorXd& w = solver.eigenvalues();
  if (w.minCoeff() >= 0.0) return false;
  const Eigen::VectorXd clipped = w.cwiseMax(0.0);
  const ComplexMatrix& v = solver.eigenvectors();
  rho = v * clipped.asDiagonal() * v.adjoint();
  hermitize_and_normalize(rho);
  return true;
}

bool restore_positivity(ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver;
  return restore_positivity(rho, solver);
}

NoiseCorrelation::NoiseCorrelation(const Matrix2c& u) : u_(u) {
  if (std::abs(u(0, 1) - u(1, 0)) > 1e-12) throw DomainError("noise correlation must be symmetric");
  Eigen::JacobiSVD<Matrix2c> svd(u);
  if (svd.singularValues()(0) > 1.0 + 1e-12) {
    throw DomainError("noise correlation violates ||u||_2 <= 1");
  }
}

NoiseCorrelation NoiseCorrelation::uncorrelated() { return NoiseCorrelation(Matrix2c::Zero()); }

NoiseCorrelation NoiseCorrelation::protecting() { return NoiseCorrelation(protecting_matrix()); }

bool NoiseCorrelation::is_protecting() const { return u_ == protecting_matrix(); }

Eigen::Matrix4d noise_covariance(const NoiseCorrelation& corr) {
  // xi_i = a_i + i b_i. From E[xi_i xi_j^*] = delta_ij and E[xi_i xi_j] = u_ij:
  //   E[a_i a_j] = (delta_ij + Re u_ij)/2,  E[b_i b_j] = (delta_ij - Re u_ij)/2,
  //   E[a_i b_j] = E[b_i a_j] = Im u_ij / 2.
  const Matrix2c& u = corr.matrix();
  Eigen::Matrix4d c;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      c(2 * i, 2 * j) = 0.5 * (delta + u(i, j).real());
      c(2 * i + 1, 2 * j + 1) = 0.5 * (delta - u(i, j).real());
      c(2 * i, 2 * j + 1) = 0.5 * u(i, j).imag();
      c(2 * i + 1, 2 * j) = 0.5 * u(i, j).imag();
    }
  }
  return c;
}

Eigen::Matrix4d noise_factor(const NoiseCorrelation& corr) {
  const Eigen::Matrix4d c = noise_covariance(corr);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(c, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kPsdTol) {
    throw DomainError("noise covariance is not positive semidefinite (||u||_2 > 1)");
  }
  // Semidefinite Cholesky without pivoting; columns of singular directions are zero.
  Eigen::Matrix4d l = Eigen::Matrix4d::Zero();
  for (int j = 0; j < 4; ++j) {
    double d = c(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d < -kPsdTol) throw DomainError("noise covariance is not positive semidefinite");
    const bool singular = d <= kPsdTol;
    if (!singular) l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < 4; ++i) {
      double v = c(i, j);
      for (int k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      if (singular) {
        if (std::abs(v) > 1e-9) throw DomainError("noise covariance is not positive semidefinite");
      } else {
        l(i, j) = v / l(j, j);
      }
    }
  }
  return l;
}

NoiseIncrement correlate(const Eigen::Matrix4d& factor, std::span<const double> dw) {
  if (dw.size() != kNoisesPerQubit) throw DimensionError("correlate expects four increments");
  const Eigen::Vector4d w(dw[0], dw[1], dw[2], dw[3]);
  const Eigen::Vector4d x = factor * w;
  return {Complex(x(0), x(1)), Complex(x(2), x(3))};
}

HomodyneCurrents homodyne_currents(Complex y_minus, Complex y_plus) {
  return {0.5 * (y_minus - y_plus).real(), 0.5 * (y_minus + y_plus).imag()};
}

std::pair<Complex, Complex> combine_currents(double i12, double i34) {
  return {Complex(i12, i34), Complex(-i12, i34)};
}

std::pair<Complex, Complex> current_drift(const LindbladModel& model, const NoiseCorrelation& u,
                                          const ComplexMatrix& rho, int qubit) {
  const Matrix2c r = reduced_qubit(rho, qubit, model.n_qubits);
  const auto a = static_cast<std::size_t>(qubit);
  const double root[2] = {std::sqrt(model.gamma_minus[a]), std::sqrt(model.gamma_plus[a])};
  const Matrix2c sigma[2] = {pauli::minus(), pauli::plus()};
  Complex mean[2], mean_dag[2];
  for (int i = 0; i < 2; ++i) {
    mean[i] = root[i] * (sigma[i].transpose().array() * r.array()).sum();
    mean_dag[i] = root[i] * (sigma[i].adjoint().transpose().array() * r.array()).sum();
  }
  const Matrix2c& m = u.matrix();
  return {mean[0] + m(0, 0) * mean_dag[0] + m(0, 1) * mean_dag[1],
          mean[1] + m(1, 0) * mean_dag[0] + m(1, 1) * mean_dag[1]};
}

void draw_increments(RandomStream& rng, double dt, std::span<double> out) {
  const double s = std::sqrt(dt);
  for (double& w : out) w = s * rng.normal();
}

DiffusiveStepper::DiffusiveStepper(const LindbladModel& model,
                                   std::vector<NoiseCorrelation> per_qubit, double dt,
                                   SmeScheme scheme)
    : model_(model),
      correlations_(std::move(per_qubit)),
      generator_(model),
      dt_(dt),
      scheme_(scheme),
      n_qubits_(model.n_qubits) {
  model_.validate();
  require_perfect_detection(model_);
  if (static_cast<int>(correlations_.size()) != n_qubits_) {
    throw DimensionError("need one noise correlation per qubit");
  }
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  for (int a = 0; a < n_qubits_; ++a) {
    const auto idx = static_cast<std::size_t>(a);
    const Eigen::Matrix4d l = noise_factor(correlations_[idx]);
    factors_.push_back(l);
    const double root[2] = {std::sqrt(model_.gamma_minus[idx]), std::sqrt(model_.gamma_plus[idx])};
    const Matrix2c sigma[2] = {pauli::minus(), pauli::plus()};
    for (int k = 0; k < kNoisesPerQubit; ++k) {
      Matrix2c local = Matrix2c::Zero();
      for (int i = 0; i < 2; ++i) {
        const Complex f(l(2 * i, k), l(2 * i + 1, k));
        local += root[i] * std::conj(f) * sigma[i];
      }
      unit_operators_.push_back(local.isZero(0.0) ? ComplexMatrix() : embed(local, a, n_qubits_));
    }
  }
  draws_.resize(noise_count());
  const Eigen::Index dim = model_.dim();
  static_kraus_ = ComplexMatrix::Identity(dim, dim);
  for (int a = 0; a < n_qubits_; ++a) {
    const auto idx = static_cast<std::size_t>(a);
    const Matrix2c c = model_.gamma_minus[idx] * pauli::plus() * pauli::minus() +
                       model_.gamma_plus[idx] * pauli::minus() * pauli::plus();
    static_kraus_ -= (0.5 * dt_) * embed(c, a, n_qubits_);
  }
  for (const ComplexMatrix& op : unit_operators_) {
    if (op.size() != 0) static_kraus_ -= (0.5 * dt_) * op * op;
  }
}

void DiffusiveStepper::innovation(const ComplexMatrix& a, const ComplexMatrix& rho,
                                  ComplexMatrix& out) const {
  // H[a] rho = a rho + rho a^dag - Tr(a rho + rho a^dag) rho
  t1_.noalias() = a * rho;
  out = t1_ + t1_.adjoint();
  const Complex tr = out.trace();
  out -= tr * rho;
}

void DiffusiveStepper::innovation_derivative(const ComplexMatrix& a, const ComplexMatrix& rho,
                                             const ComplexMatrix& direction,
                                             ComplexMatrix& out) const {
  // d/drho H[a] in `direction` (Hermitian):
  //   a d + d a^dag - Tr(a d + d a^dag) rho - Tr(a rho + rho a^dag) d
  t1_.noalias() = a * direction;
  out = t1_ + t1_.adjoint();
  const Complex tr_d = out.trace();
  const Complex tr_rho = 2.0 * trace_product(a, rho).real();
  out -= tr_d * rho;
  out -= tr_rho * direction;
}

std::vector<CurrentSample> DiffusiveStepper::step(ComplexMatrix& rho, std::span<const double> dw) {
  if (dw.size() != noise_count()) throw DimensionError("wrong number of noise increments");
  const Eigen::Index dim = model_.dim();
  if (rho.rows() != dim || rho.cols() != dim) {
    throw DimensionError("step_diffusive: state dimension does not match the model");
  }

  std::vector<CurrentSample> currents;
  currents.reserve(static_cast<std::size_t>(n_qubits_));
  a_.setZero(dim, dim);
  for (int q = 0; q < n_qubits_; ++q) {
    const auto idx = static_cast<std::size_t>(q);
    const std::span<const double> local = dw.subspan(idx * kNoisesPerQubit, kNoisesPerQubit);
    const NoiseIncrement xi = correlate(factors_[idx], local);
    const auto [drift_minus, drift_plus] = current_drift(model_, correlations_[idx], rho, q);
    CurrentSample sample{drift_minus + xi.d_xi_minus / dt_, drift_plus + xi.d_xi_plus / dt_, {}, {}};
    if (correlations_[idx].is_protecting() && model_.gamma_minus[idx] == model_.gamma_plus[idx]) {
      const HomodyneCurrents h = homodyne_currents(sample.y_minus, sample.y_plus);
      sample.i12 = h.i12;
      sample.i34 = h.i34;
    }
    currents.push_back(sample);
    for (int k = 0; k < kNoisesPerQubit; ++k) {
      const ComplexMatrix& op = unit_operators_[idx * kNoisesPerQubit + static_cast<std::size_t>(k)];
      if (op.size() != 0) a_ += local[static_cast<std::size_t>(k)] * op;
    }
  }

  if (scheme_ == SmeScheme::kraus) {
    // Record increments dY_k = dW_k + Tr((A_k + A_k^dag) rho) dt.
    for (const ComplexMatrix& op : unit_operators_) {
      if (op.size() != 0) a_ += (2.0 * trace_product(op, rho).real() * dt_) * op;
    }
    m_ = static_kraus_ + a_;
    m_.noalias() += 0.5 * a_ * a_;
    t1_.noalias() = m_ * rho;
    rho.noalias() = t1_ * m_.adjoint();
    hermitize_and_normalize(rho);
    return currents;
  }

  generator_.apply(rho, drift_);
  innovation(a_, rho, b_);
  acc_ = rho + dt_ * drift_ + b_;

  if (scheme_ == SmeScheme::milstein) {
    // 1/2 sum_kl (L^k b_l)(dW_k dW_l - delta_kl dt), with sum_l dW_l b_l = H[a].
    innovation_derivative(a_, rho, b_, d_);
    acc_ += 0.5 * d_;
    for (const ComplexMatrix& op : unit_operators_) {
      if (op.size() == 0) continue;
      innovation(op, rho, b_);
      innovation_derivative(op, rho, b_, d_);
      acc_ -= (0.5 * dt_) * d_;
    }
  }

  rho = acc_;
  hermitize_and_normalize(rho);
  restore_positivity(rho, eigen_);
  return currents;
}

std::vector<CurrentSample> DiffusiveStepper::step(ComplexMatrix& rho, RandomStream& rng) {
  draw_increments(rng, dt_, draws_);
  return step(rho, draws_);
}

std::pair<DensityMatrix, std::vector<CurrentSample>> step_diffusive(
    const DensityMatrix& state, const LindbladModel& model, const NoiseCorrelation& u,
    RandomStream& rng, double dt, SmeScheme scheme) {
  DiffusiveStepper stepper(model, std::vector<NoiseCorrelation>(
                                      static_cast<std::size_t>(model.n_qubits), u),
                           dt, scheme);
  ComplexMatrix rho = state.matrix();
  auto currents = stepper.step(rho, rng);
  return {DensityMatrix(std::move(rho)), std::move(currents)};
}

Matrix2c stochastic_unitary(double gamma, double dw1, double dw2) {
  const double r = std::hypot(dw1, dw2);
  if (r == 0.0 || gamma == 0.0) return Matrix2c::Identity();
  const double theta = std::sqrt(0.5 * gamma) * r;
  const Matrix2c axis = (dw2 * pauli::x() - dw1 * pauli::y()) / r;
  return std::cos(theta) * Matrix2c::Identity() - Complex(0.0, std::sin(theta)) * axis;
}

ProtectingUnitaryStepper::ProtectingUnitaryStepper(const LindbladModel& model, double dt)
    : dt_(dt), n_qubits_(model.n_qubits) {
  model.validate();
  require_perfect_detection(model);
  if (!model.balanced()) {
    throw DomainError("the protecting unitary path needs gamma_minus == gamma_plus on every qubit");
  }
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  gamma_ = model.gamma_minus;
  draws_.resize(noise_count());
  locals_.resize(static_cast<std::size_t>(n_qubits_));
}

std::vector<CurrentSample> ProtectingUnitaryStepper::step(ComplexMatrix& rho,
                                                          LocalUnitaryFrame& frame,
                                                          std::span<const double> dw) {
  if (dw.size() != noise_count()) throw DimensionError("wrong number of noise increments");
  if (frame.n_qubits() != n_qubits_ || rho.rows() != (Eigen::Index{1} << n_qubits_)) {
    throw DimensionError("step_protecting_unitary: frame or state does not match the model");
  }
  const NoiseCorrelation protecting = NoiseCorrelation::protecting();
  const Eigen::Matrix4d factor = noise_factor(protecting);
  std::vector<CurrentSample> currents;
  currents.reserve(static_cast<std::size_t>(n_qubits_));
  for (int q = 0; q < n_qubits_; ++q) {
    const auto idx = static_cast<std::size_t>(q);
    const std::span<const double> local = dw.subspan(idx * kNoisesPerQubit, kNoisesPerQubit);
    locals_[idx] = stochastic_unitary(gamma_[idx], local[0], local[1]);
    frame.left_multiply(q, locals_[idx]);
    // The deterministic part of both currents vanishes for this unraveling.
    const NoiseIncrement xi = correlate(factor, local);
    CurrentSample sample{xi.d_xi_minus / dt_, xi.d_xi_plus / dt_, {}, {}};
    const HomodyneCurrents h = homodyne_currents(sample.y_minus, sample.y_plus);
    sample.i12 = h.i12;
    sample.i34 = h.i34;
    currents.push_back(sample);
  }
  const ComplexMatrix u = tensor_product(locals_);
  rho = (u * rho * u.adjoint()).eval();
  hermitize_and_normalize(rho);
  if (++steps_ % kReunitarizeEvery == 0) frame.reunitarize();
  return currents;
}

std::vector<CurrentSample> ProtectingUnitaryStepper::step(ComplexMatrix& rho,
                                                          LocalUnitaryFrame& frame,
                                                          RandomStream& rng) {
  draw_increments(rng, dt_, draws_);
  return step(rho, frame, draws_);
}

std::pair<DensityMatrix, LocalUnitaryFrame> step_protecting_unitary(const DensityMatrix& state,
                                                                   const LindbladModel& model,
                                                                   RandomStream& rng, double dt,
                                                                   LocalUnitaryFrame frame) {
  ProtectingUnitaryStepper stepper(model, dt);
  ComplexMatrix rho = state.matrix();
  stepper.step(rho, frame, rng);
  return {DensityMatrix(std::move(rho)), std::move(frame)};
}

}  // namespace qtraj
