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

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qtraj/qcore.hpp"

namespace qtraj {

/// Local decay (gamma_minus) and pump (gamma_plus) rates per qubit, plus the
/// detection efficiency shared by every monitored channel.
struct LindbladModel {
  int n_qubits = 0;
  std::vector<double> gamma_minus;
  std::vector<double> gamma_plus;
  double eta = 1.0;

  static LindbladModel uniform(int n_qubits, double gamma_minus, double gamma_plus,
                               double eta = 1.0);

  /// Throws DomainError on negative rates, eta outside [0, 1] or size mismatch.
  void validate() const;

  Eigen::Index dim() const { return Eigen::Index{1} << n_qubits; }
  double max_rate() const;
  /// gamma_minus == gamma_plus on every qubit.
  bool balanced() const;
  /// Copy with every rate multiplied by `factor`.
  LindbladModel scaled(double factor) const;
};

/// Fixed step grid t_k = k dt, k = 0..n_steps.
struct TimeGrid {
  double dt = 0.0;
  std::size_t n_steps = 0;

  /// n_steps = t_max / dt, which must be an integer to 1e-9 relative.
  static TimeGrid make(double dt, double t_max);

  double time(std::size_t step) const { return static_cast<double>(step) * dt; }
  double t_max() const { return time(n_steps); }
  /// Index of grid point t; throws DomainError if t is not on the grid.
  std::size_t step_of(double t) const;
};

template <class T>
struct TimeSeries {
  std::vector<double> times;
  std::vector<T> values;

  std::size_t size() const { return times.size(); }
};

/// Sum over qubits and channels of gamma D[sigma] rho.
ComplexMatrix lindblad_rhs(const LindbladModel& model, const ComplexMatrix& rho);
ComplexMatrix lindblad_rhs(const LindbladModel& model, const DensityMatrix& rho);

/// Precomputed embedded collapse operators for repeated RHS evaluation.
class LindbladGenerator {
 public:
  explicit LindbladGenerator(const LindbladModel& model);

  /// out = L(rho). `out` must not alias `rho`.
  void apply(const ComplexMatrix& rho, ComplexMatrix& out) const;

 private:
  struct Channel {
    ComplexMatrix c;      // sqrt(gamma) sigma, embedded
    ComplexMatrix c_dag;  // c^dag
    ComplexMatrix c_dag_c;
  };
  std::vector<Channel> channels_;
  Eigen::Index dim_ = 0;
  mutable ComplexMatrix scratch_;
};

/// Largest gamma dt accepted by the integrators.
inline constexpr double kMaxRateStep = 1e-2;

/// Classical RK4 on the Lindblad equation; one output state per grid point.
TimeSeries<DensityMatrix> integrate_master(const LindbladModel& model, const DensityMatrix& rho0,
                                           double dt, double t_max);

/// RK4 keeping only the listed grid indices (ascending).
TimeSeries<DensityMatrix> integrate_master(const LindbladModel& model, const DensityMatrix& rho0,
                                           const TimeGrid& grid,
                                           std::span<const std::size_t> sample_steps);

enum class AnalyticCurve { zero_temperature, infinite_temperature, monitored };

/// Throws DomainError for names other than zero_T, infinite_T, monitored.
AnalyticCurve parse_analytic_curve(std::string_view name);

/// Closed-form concurrence of (|01> + |10>)/sqrt2 under equal local rates
/// gamma, clamped at 0. `eta` only enters the monitored curve.
double analytic_concurrence(AnalyticCurve kind, double gamma, double eta, double t);

/// The common rate for analytic curves; rejects models whose qubits differ.
double symmetric_rate(const LindbladModel& model);

/// Time at which the monitored curve first reaches zero,
/// ln(1 + sqrt2) / (2 gamma (1 - eta)). Empty when eta == 1.
std::optional<double> disentanglement_time(double gamma, double eta);

}  // namespace qtraj
