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

#include "qtraj/master.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qtraj/error.hpp"

namespace qtraj {

LindbladModel LindbladModel::uniform(int n_qubits, double gamma_minus, double gamma_plus,
                                     double eta) {
  LindbladModel m;
  m.n_qubits = n_qubits;
  m.gamma_minus.assign(static_cast<std::size_t>(std::max(n_qubits, 0)), gamma_minus);
  m.gamma_plus.assign(static_cast<std::size_t>(std::max(n_qubits, 0)), gamma_plus);
  m.eta = eta;
  m.validate();
  return m;
}

void LindbladModel::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw DomainError("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  const auto n = static_cast<std::size_t>(n_qubits);
  if (gamma_minus.size() != n || gamma_plus.size() != n) {
    throw DomainError("rate lists must have one entry per qubit");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!(gamma_minus[a] >= 0.0) || !(gamma_plus[a] >= 0.0) || !std::isfinite(gamma_minus[a]) ||
        !std::isfinite(gamma_plus[a])) {
      throw DomainError("rates must be finite and non-negative (qubit " + std::to_string(a) + ")");
    }
  }
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
}

double LindbladModel::max_rate() const {
  double m = 0.0;
  for (double g : gamma_minus) m = std::max(m, g);
  for (double g : gamma_plus) m = std::max(m, g);
  return m;
}

bool LindbladModel::balanced() const { return gamma_minus == gamma_plus; }

LindbladModel LindbladModel::scaled(double factor) const {
  LindbladModel m = *this;
  for (double& g : m.gamma_minus) g *= factor;
  for (double& g : m.gamma_plus) g *= factor;
  return m;
}

TimeGrid TimeGrid::make(double dt, double t_max) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (!(t_max >= dt)) throw DomainError("t_max must be at least dt");
  const double steps = t_max / dt;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps)) {
    throw DomainError("t_max is not an integer multiple of dt");
  }
  return TimeGrid{dt, static_cast<std::size_t>(rounded)};
}

std::size_t TimeGrid::step_of(double t) const {
  const double k = t / dt;
  const double rounded = std::round(k);
  if (t < 0.0 || std::abs(k - rounded) > 1e-9 * std::max(1.0, k) ||
      rounded > static_cast<double>(n_steps)) {
    throw DomainError("time " + std::to_string(t) + " is not a point of the grid");
  }
  return static_cast<std::size_t>(rounded);
}

LindbladGenerator::LindbladGenerator(const LindbladModel& model) : dim_(model.dim()) {
  model.validate();
  for (int a = 0; a < model.n_qubits; ++a) {
    const auto idx = static_cast<std::size_t>(a);
    const std::pair<double, Matrix2c> local[] = {{model.gamma_minus[idx], pauli::minus()},
                                                 {model.gamma_plus[idx], pauli::plus()}};
    for (const auto& [gamma, sigma] : local) {
      if (gamma == 0.0) continue;
      Channel ch;
      ch.c = embed(std::sqrt(gamma) * sigma, a, model.n_qubits);
      ch.c_dag = ch.c.adjoint();
      ch.c_dag_c = ch.c_dag * ch.c;
      channels_.push_back(std::move(ch));
    }
  }
  scratch_.resize(dim_, dim_);
}

void LindbladGenerator::apply(const ComplexMatrix& rho, ComplexMatrix& out) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw DimensionError("lindblad_rhs: state dimension does not match the model");
  }
  out.setZero(dim_, dim_);
  for (const Channel& ch : channels_) {
    scratch_.noalias() = ch.c * rho;
    out.noalias() += scratch_ * ch.c_dag;
    out.noalias() -= 0.5 * (ch.c_dag_c * rho);
    out.noalias() -= 0.5 * (rho * ch.c_dag_c);
  }
}

ComplexMatrix lindblad_rhs(const LindbladModel& model, const ComplexMatrix& rho) {
  ComplexMatrix out;
  LindbladGenerator(model).apply(rho, out);
  return out;
}

ComplexMatrix lindblad_rhs(const LindbladModel& model, const DensityMatrix& rho) {
  return lindblad_rhs(model, rho.matrix());
}

namespace {

class Rk4 {
 public:
  Rk4(const LindbladModel& model, double dt) : gen_(model), dt_(dt) {}

  void step(ComplexMatrix& rho) {
    gen_.apply(rho, k1_);
    tmp_ = rho + (0.5 * dt_) * k1_;
    gen_.apply(tmp_, k2_);
    tmp_ = rho + (0.5 * dt_) * k2_;
    gen_.apply(tmp_, k3_);
    tmp_ = rho + dt_ * k3_;
    gen_.apply(tmp_, k4_);
    rho += (dt_ / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  LindbladGenerator gen_;
  double dt_;
  ComplexMatrix k1_, k2_, k3_, k4_, tmp_;
};

void check_master_inputs(const LindbladModel& model, const DensityMatrix& rho0, double dt) {
  model.validate();
  if (rho0.n_qubits() != model.n_qubits) {
    throw DimensionError("integrate_master: initial state has the wrong number of qubits");
  }
  if (model.max_rate() * dt > kMaxRateStep) {
    throw DomainError("integrate_master: step too large (gamma_max dt = " +
                      std::to_string(model.max_rate() * dt) + " > 0.01)");
  }
}

}  // namespace

TimeSeries<DensityMatrix> integrate_master(const LindbladModel& model, const DensityMatrix& rho0,
                                           double dt, double t_max) {
  const TimeGrid grid = TimeGrid::make(dt, t_max);
  std::vector<std::size_t> all(grid.n_steps + 1);
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return integrate_master(model, rho0, grid, all);
}

TimeSeries<DensityMatrix> integrate_master(const LindbladModel& model, const DensityMatrix& rho0,
                                           const TimeGrid& grid,
                                           std::span<const std::size_t> sample_steps) {
  check_master_inputs(model, rho0, grid.dt);
  if (!std::is_sorted(sample_steps.begin(), sample_steps.end())) {
    throw DomainError("integrate_master: sample steps must be ascending");
  }
  if (!sample_steps.empty() && sample_steps.back() > grid.n_steps) {
    throw DomainError("integrate_master: sample step beyond t_max");
  }
  TimeSeries<DensityMatrix> out;
  out.times.reserve(sample_steps.size());
  out.values.reserve(sample_steps.size());
  Rk4 rk4(model, grid.dt);
  ComplexMatrix rho = rho0.matrix();
  std::size_t step = 0;
  for (std::size_t target : sample_steps) {
    while (step < target) {
      rk4.step(rho);
      ++step;
    }
    out.times.push_back(grid.time(step));
    out.values.emplace_back(rho);  // validates invariants
  }
  return out;
}

AnalyticCurve parse_analytic_curve(std::string_view name) {
  if (name == "zero_T") return AnalyticCurve::zero_temperature;
  if (name == "infinite_T") return AnalyticCurve::infinite_temperature;
  if (name == "monitored") return AnalyticCurve::monitored;
  throw DomainError("unknown analytic curve '" + std::string(name) + "'");
}

double analytic_concurrence(AnalyticCurve kind, double gamma, double eta, double t) {
  if (!(gamma >= 0.0) || !(t >= 0.0)) throw DomainError("analytic_concurrence: gamma, t >= 0");
  auto infinite_temperature = [](double g, double time) {
    const double x = std::exp(-2.0 * g * time);
    return std::max(0.0, x + 0.5 * x * x - 0.5);
  };
  switch (kind) {
    case AnalyticCurve::zero_temperature:
      return std::exp(-gamma * t);
    case AnalyticCurve::infinite_temperature:
      return infinite_temperature(gamma, t);
    case AnalyticCurve::monitored:
      if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("analytic_concurrence: eta in [0, 1]");
      return infinite_temperature(gamma * (1.0 - eta), t);
  }
  throw DomainError("analytic_concurrence: unknown curve");
}

double symmetric_rate(const LindbladModel& model) {
  model.validate();
  const double g = model.gamma_minus.front();
  for (int a = 0; a < model.n_qubits; ++a) {
    const auto i = static_cast<std::size_t>(a);
    if (model.gamma_minus[i] != g) {
      throw DomainError("analytic curves assume identical rates on every qubit");
    }
    if (model.gamma_plus[i] != model.gamma_plus.front()) {
      throw DomainError("analytic curves assume identical rates on every qubit");
    }
  }
  if (model.gamma_plus.front() != 0.0 && model.gamma_plus.front() != g) {
    throw DomainError("analytic curves need gamma_plus equal to 0 or to gamma_minus");
  }
  return g;
}

std::optional<double> disentanglement_time(double gamma, double eta) {
  if (!(gamma > 0.0)) throw DomainError("disentanglement_time: gamma must be positive");
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("disentanglement_time: eta in [0, 1]");
  if (eta == 1.0) return std::nullopt;
  return std::log(1.0 + std::sqrt(2.0)) / (2.0 * gamma * (1.0 - eta));
}

}  // namespace qtraj
