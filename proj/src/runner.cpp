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

#include "qtraj/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "qtraj/csv.hpp"
#include "qtraj/diffusive.hpp"
#include "qtraj/entangle.hpp"
#include "qtraj/error.hpp"
#include "qtraj/jumps.hpp"
#include "qtraj/recovery.hpp"

namespace qtraj {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Advances one trajectory between sample points and exposes the conditioned
// and frame-recovered states.
class Driver {
 public:
  virtual ~Driver() = default;
  virtual void advance(std::size_t n_steps) = 0;
  virtual const ComplexMatrix& state() const = 0;
  virtual ComplexMatrix recovered() const = 0;
};

class JumpDriver final : public Driver {
 public:
  JumpDriver(const LindbladModel& model, std::vector<JumpOperator> jumps, const DensityMatrix& rho0,
             double dt, std::uint64_t seed, std::uint64_t index, bool pauli_recovery)
      : trajectory_(model, std::move(jumps), rho0, dt, seed, index),
        n_qubits_(model.n_qubits),
        pauli_recovery_(pauli_recovery) {}

  void advance(std::size_t n_steps) override { trajectory_.advance(n_steps); }
  const ComplexMatrix& state() const override { return trajectory_.state(); }
  ComplexMatrix recovered() const override {
    if (!pauli_recovery_) return trajectory_.state();
    return recover(trajectory_.state(), observer_frame(trajectory_.events(), n_qubits_));
  }

 private:
  JumpTrajectory trajectory_;
  int n_qubits_;
  bool pauli_recovery_;
};

class DiffusiveDriver final : public Driver {
 public:
  DiffusiveDriver(DiffusiveStepper& stepper, const DensityMatrix& rho0, std::uint64_t seed,
                  std::uint64_t index)
      : stepper_(stepper), rng_(seed, index), rho_(rho0.matrix()) {}

  void advance(std::size_t n_steps) override {
    for (std::size_t k = 0; k < n_steps; ++k) stepper_.step(rho_, rng_);
  }
  const ComplexMatrix& state() const override { return rho_; }
  ComplexMatrix recovered() const override { return rho_; }

 private:
  DiffusiveStepper& stepper_;
  RandomStream rng_;
  ComplexMatrix rho_;
};

class UnitaryDriver final : public Driver {
 public:
  UnitaryDriver(const LindbladModel& model, const DensityMatrix& rho0, double dt,
                std::uint64_t seed, std::uint64_t index)
      : stepper_(model, dt), frame_(model.n_qubits), rng_(seed, index), rho_(rho0.matrix()) {}

  void advance(std::size_t n_steps) override {
    for (std::size_t k = 0; k < n_steps; ++k) stepper_.step(rho_, frame_, rng_);
  }
  const ComplexMatrix& state() const override { return rho_; }
  ComplexMatrix recovered() const override { return recover_unitary(rho_, frame_); }

 private:
  ProtectingUnitaryStepper stepper_;
  LocalUnitaryFrame frame_;
  RandomStream rng_;
  ComplexMatrix rho_;
};

// Per-sample partial sums of one reduction group.
struct Accumulator {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  double max_deviation = 0.0;
  ComplexMatrix state_sum;
  ComplexMatrix recovered_sum;

  void add(double c) {
    ++count;
    const double delta = c - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (c - mean);
    min = std::min(min, c);
    max = std::max(max, c);
  }

  // Chan et al. pairwise merge.
  void merge(const Accumulator& other) {
    if (other.count == 0) return;
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double delta = other.mean - mean;
    const double n = na + nb;
    mean += delta * nb / n;
    m2 += other.m2 + delta * delta * na * nb / n;
    count += other.count;
    min = std::min(min, other.min);
    max = std::max(max, other.max);
    max_deviation = std::max(max_deviation, other.max_deviation);
    state_sum += other.state_sum;
    recovered_sum += other.recovered_sum;
  }
};

using GroupResult = std::vector<Accumulator>;

struct Plan {
  const ExperimentConfig* config = nullptr;
  DensityMatrix rho0;
  TimeGrid grid;
  std::vector<std::size_t> steps;
  std::vector<ComplexMatrix> recovered_oracle;
  bool two_qubits = false;
  bool pauli_recovery = false;
  std::vector<JumpOperator> jumps;
};

std::vector<JumpOperator> jumps_for(const ExperimentConfig& cfg) {
  switch (cfg.unraveling) {
    case UnravelingKind::jump_canonical:
      return canonical_jumps(cfg.model);
    case UnravelingKind::jump_protecting:
      return protecting_jumps(cfg.model);
    case UnravelingKind::jump_transformed: {
      const std::vector<UnravelingTransform> u(static_cast<std::size_t>(cfg.model.n_qubits),
                                               UnravelingTransform(ComplexMatrix(cfg.transform)));
      return transformed_jumps(cfg.model, u);
    }
    default:
      return {};
  }
}

GroupResult run_group(const Plan& plan, std::uint64_t begin, std::uint64_t end) {
  const ExperimentConfig& cfg = *plan.config;
  const Eigen::Index dim = cfg.model.dim();
  GroupResult acc(plan.steps.size());
  for (Accumulator& a : acc) {
    a.state_sum = ComplexMatrix::Zero(dim, dim);
    a.recovered_sum = ComplexMatrix::Zero(dim, dim);
  }

  std::unique_ptr<DiffusiveStepper> sme;
  if (cfg.unraveling == UnravelingKind::diffusive) {
    sme = std::make_unique<DiffusiveStepper>(
        cfg.model,
        std::vector<NoiseCorrelation>(static_cast<std::size_t>(cfg.model.n_qubits),
                                      NoiseCorrelation(cfg.u)),
        cfg.dt, cfg.scheme);
  }

  for (std::uint64_t index = begin; index < end; ++index) {
    std::unique_ptr<Driver> driver;
    if (sme) {
      driver = std::make_unique<DiffusiveDriver>(*sme, plan.rho0, cfg.master_seed, index);
    } else if (cfg.unraveling == UnravelingKind::diffusive_protecting_unitary) {
      driver = std::make_unique<UnitaryDriver>(cfg.model, plan.rho0, cfg.dt, cfg.master_seed, index);
    } else {
      driver = std::make_unique<JumpDriver>(cfg.model, plan.jumps, plan.rho0, cfg.dt,
                                            cfg.master_seed, index, plan.pauli_recovery);
    }
    std::size_t at = 0;
    for (std::size_t s = 0; s < plan.steps.size(); ++s) {
      driver->advance(plan.steps[s] - at);
      at = plan.steps[s];
      const ComplexMatrix& rho = driver->state();
      require_valid_state(rho, "trajectory state");
      const ComplexMatrix rec = driver->recovered();
      Accumulator& a = acc[s];
      a.add(plan.two_qubits ? concurrence(rho) : kNaN);
      a.state_sum += rho;
      a.recovered_sum += rec;
      a.max_deviation = std::max(a.max_deviation, trace_distance(rec, plan.recovered_oracle[s]));
    }
  }
  return acc;
}

std::vector<GroupResult> run_groups(const Plan& plan, std::uint64_t n, std::uint64_t groups,
                                    unsigned threads) {
  std::vector<GroupResult> results(static_cast<std::size_t>(groups));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t g = next.fetch_add(1);
      if (g >= groups) return;
      try {
        results[static_cast<std::size_t>(g)] = run_group(plan, g * n / groups, (g + 1) * n / groups);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(groups);
      }
    }
  };
  const unsigned count = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), groups));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

double concurrence_or_nan(const ComplexMatrix& rho, bool two_qubits) {
  return two_qubits ? concurrence(rho) : kNaN;
}

std::vector<ComplexMatrix> oracle_states(const LindbladModel& model, const DensityMatrix& rho0,
                                         const TimeGrid& grid, const std::vector<std::size_t>& steps) {
  const TimeSeries<DensityMatrix> series = integrate_master(model, rho0, grid, steps);
  std::vector<ComplexMatrix> out;
  out.reserve(series.size());
  for (const DensityMatrix& s : series.values) out.push_back(s.matrix());
  return out;
}

EnsembleStatistics master_statistics(const Plan& plan, const std::vector<ComplexMatrix>& oracle) {
  EnsembleStatistics stats;
  stats.kind = UnravelingKind::none;
  stats.n_trajectories = 1;
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    SampleStatistics row;
    row.time = plan.grid.time(plan.steps[s]);
    row.n = 1;
    const double c = concurrence_or_nan(oracle[s], plan.two_qubits);
    row.mean_concurrence = row.min_concurrence = row.max_concurrence = c;
    row.recovered_concurrence = c;
    row.mean_state = row.recovered_mean_state = oracle[s];
    row.oracle_state = row.recovered_oracle_state = oracle[s];
    stats.samples.push_back(std::move(row));
  }
  return stats;
}

}  // namespace

unsigned default_thread_count() {
  if (const char* env = std::getenv("QTRAJ_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096) {
      throw ConfigError("QTRAJ_THREADS: expected an integer between 1 and 4096");
    }
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

EnsembleStatistics run_ensemble(const ExperimentConfig& config) {
  return run_ensemble(config, config.threads ? *config.threads : default_thread_count());
}

EnsembleStatistics run_ensemble(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  Plan plan{&config, config.initial_state(), config.grid(), config.sample_steps(), {}, false, false, {}};
  plan.two_qubits = config.model.n_qubits == 2;
  const std::vector<ComplexMatrix> oracle = oracle_states(config.model, plan.rho0, plan.grid, plan.steps);
  if (config.unraveling == UnravelingKind::none) return master_statistics(plan, oracle);

  plan.jumps = jumps_for(config);
  plan.pauli_recovery = config.unraveling == UnravelingKind::jump_protecting && config.model.balanced();
  if (plan.pauli_recovery) {
    // Undetected protecting jumps act as unmonitored decoherence at (1 - eta) gamma.
    plan.recovered_oracle = oracle_states(config.model.scaled(1.0 - config.model.eta), plan.rho0,
                                          plan.grid, plan.steps);
  } else if (config.unraveling == UnravelingKind::diffusive_protecting_unitary) {
    plan.recovered_oracle.assign(plan.steps.size(), plan.rho0.matrix());
  } else {
    plan.recovered_oracle = oracle;
  }

  const std::uint64_t n = config.n_trajectories;
  const std::uint64_t groups = std::min(kReductionGroups, n);
  const std::vector<GroupResult> results = run_groups(plan, n, groups, threads);

  EnsembleStatistics stats;
  stats.kind = config.unraveling;
  stats.n_trajectories = n;
  const double nd = static_cast<double>(n);
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    Accumulator total = results[0][s];
    for (std::size_t g = 1; g < results.size(); ++g) total.merge(results[g][s]);

    SampleStatistics row;
    row.time = plan.grid.time(plan.steps[s]);
    row.n = total.count;
    row.mean_concurrence = total.mean;
    row.std_error = n > 1 ? std::sqrt(total.m2 / (nd - 1.0)) / std::sqrt(nd) : 0.0;
    row.min_concurrence = plan.two_qubits ? total.min : kNaN;
    row.max_concurrence = plan.two_qubits ? total.max : kNaN;
    row.max_recovered_deviation = total.max_deviation;
    row.mean_state = total.state_sum / nd;
    row.recovered_mean_state = total.recovered_sum / nd;
    row.oracle_state = oracle[s];
    row.recovered_oracle_state = plan.recovered_oracle[s];
    row.trace_dist_oracle = trace_distance(row.mean_state, oracle[s]);
    row.recovered_trace_dist_oracle = trace_distance(row.recovered_mean_state, plan.recovered_oracle[s]);
    row.recovered_concurrence = concurrence_or_nan(row.recovered_mean_state, plan.two_qubits);

    // Delete-one-group jackknife of the recovered concurrence.
    if (plan.two_qubits && groups > 1) {
      std::vector<double> loo;
      loo.reserve(results.size());
      for (const GroupResult& group : results) {
        const Accumulator& a = group[s];
        const double rest = nd - static_cast<double>(a.count);
        loo.push_back(concurrence((total.recovered_sum - a.recovered_sum) / rest));
      }
      double mean = 0.0;
      for (double v : loo) mean += v;
      mean /= static_cast<double>(loo.size());
      double ss = 0.0;
      for (double v : loo) ss += (v - mean) * (v - mean);
      const double g = static_cast<double>(loo.size());
      row.recovered_std_error = std::sqrt((g - 1.0) / g * ss);
    } else if (!plan.two_qubits) {
      row.recovered_std_error = kNaN;
    }
    stats.samples.push_back(std::move(row));
  }
  return stats;
}

std::vector<Figure3Series> figure3(const Figure3Options& options) {
  if (!(options.gamma > 0.0)) throw ConfigError("gamma: must be positive");
  ExperimentConfig base;
  base.initial_state_name = "psi_plus";
  base.dt = options.dt;
  base.t_max = options.t_max;
  base.n_trajectories = options.n_trajectories;
  base.master_seed = options.master_seed;
  base.threads = options.threads;
  if (!(options.sample_every > 0.0)) throw ConfigError("sample_every: must be positive");
  {
    TimeGrid grid = base.grid();
    const double ratio = options.sample_every / options.dt;
    const double stride = std::round(ratio);
    if (stride < 1.0 || std::abs(ratio - stride) > 1e-9 * ratio) {
      throw ConfigError("sample_every: must be a positive multiple of dt");
    }
    for (std::size_t k = 0; k <= grid.n_steps; k += static_cast<std::size_t>(stride)) {
      base.sample_times.push_back(grid.time(k));
    }
  }

  struct Panel {
    char label;
    const char* description;
    UnravelingKind kind;
    double gamma_plus;
    double eta;
    AnalyticCurve curve;
    StatisticsView view;
  };
  const double g = options.gamma;
  const Panel panels[] = {
      {'a', "unmonitored, infinite temperature", UnravelingKind::none, g, 1.0,
       AnalyticCurve::infinite_temperature, StatisticsView::per_trajectory},
      {'b', "unmonitored, zero temperature", UnravelingKind::none, 0.0, 1.0,
       AnalyticCurve::zero_temperature, StatisticsView::per_trajectory},
      {'c', "monitored, eta = 0.8", UnravelingKind::jump_protecting, g, 0.8, AnalyticCurve::monitored,
       StatisticsView::recovered},
      {'d', "monitored, eta = 0.9", UnravelingKind::jump_protecting, g, 0.9, AnalyticCurve::monitored,
       StatisticsView::recovered},
      {'e', "monitored, eta = 1.0", UnravelingKind::jump_protecting, g, 1.0, AnalyticCurve::monitored,
       StatisticsView::recovered},
  };

  std::vector<Figure3Series> out;
  for (const Panel& p : panels) {
    ExperimentConfig cfg = base;
    cfg.model = LindbladModel::uniform(2, g, p.gamma_plus, p.eta);
    cfg.unraveling = p.kind;
    cfg.output = (options.out_dir / (std::string("figure3_") + p.label + ".csv")).string();
    EnsembleStatistics stats = run_ensemble(cfg);
    out.push_back({p.label, p.description, std::move(cfg), p.curve, p.view, std::move(stats)});
  }
  return out;
}

std::vector<std::filesystem::path> write_figure3(const Figure3Options& options) {
  const std::vector<Figure3Series> series = figure3(options);
  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) throw IoError("cannot create directory '" + options.out_dir.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  for (const Figure3Series& s : series) {
    const std::filesystem::path path = s.config.output;
    emit_csv(s.stats, path, s.view);
    written.push_back(path);
  }

  const std::filesystem::path analytic = options.out_dir / "figure3_analytic.csv";
  std::string text = "time";
  for (const Figure3Series& s : series) text += std::string(",") + s.label;
  text += '\n';
  for (std::size_t k = 0; k < series.front().stats.samples.size(); ++k) {
    const double t = series.front().stats.samples[k].time;
    text += format_value(t);
    for (const Figure3Series& s : series) {
      text += ',';
      text += format_value(analytic_concurrence(s.curve, options.gamma, s.config.model.eta, t));
    }
    text += '\n';
  }
  write_text_file(analytic, text);
  written.push_back(analytic);
  return written;
}

}  // namespace qtraj
