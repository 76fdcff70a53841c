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

// Ensemble orchestration. Trajectory i always uses RandomStream(master_seed, i),
// and trajectories are reduced in fixed index-contiguous groups, so results
// do not depend on the number of worker threads.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qtraj/config.hpp"
#include "qtraj/qcore.hpp"

namespace qtraj {

/// Number of reduction groups (also the jackknife blocks) for large ensembles.
inline constexpr std::uint64_t kReductionGroups = 20;

struct SampleStatistics {
  double time = 0.0;
  std::uint64_t n = 0;
  /// Mean, standard error, and range of the per-trajectory concurrence.
  double mean_concurrence = 0.0;
  double std_error = 0.0;
  double min_concurrence = 0.0;
  double max_concurrence = 0.0;
  /// Concurrence of the frame-recovered ensemble-average state, with a
  /// jackknife standard error over the reduction groups.
  double recovered_concurrence = 0.0;
  double recovered_std_error = 0.0;
  /// Trace distance of the averaged states to their master-equation oracles.
  double trace_dist_oracle = 0.0;
  double recovered_trace_dist_oracle = 0.0;
  /// Largest trace distance of a single recovered trajectory to the recovered oracle.
  double max_recovered_deviation = 0.0;
  ComplexMatrix mean_state;
  ComplexMatrix recovered_mean_state;
  ComplexMatrix oracle_state;
  ComplexMatrix recovered_oracle_state;
};

struct EnsembleStatistics {
  UnravelingKind kind = UnravelingKind::none;
  std::uint64_t n_trajectories = 0;
  std::vector<SampleStatistics> samples;
};

/// Which of the two reported views a CSV holds.
enum class StatisticsView { per_trajectory, recovered };

/// QTRAJ_THREADS if set, otherwise the hardware concurrency (at least 1).
/// Throws ConfigError for a malformed QTRAJ_THREADS.
unsigned default_thread_count();

/// Uses config.threads, falling back to default_thread_count().
EnsembleStatistics run_ensemble(const ExperimentConfig& config);
EnsembleStatistics run_ensemble(const ExperimentConfig& config, unsigned threads);

struct Figure3Options {
  double gamma = 1.0;
  double dt = 1e-3;
  double t_max = 1.0;
  double sample_every = 0.05;
  std::uint64_t n_trajectories = 1000;
  std::uint64_t master_seed = 0;
  std::optional<unsigned> threads;
  std::filesystem::path out_dir = ".";
};

struct Figure3Series {
  char label;
  std::string description;
  ExperimentConfig config;
  AnalyticCurve curve;
  StatisticsView view;
  EnsembleStatistics stats;
};

/// Runs the five panels: (a) unmonitored, balanced; (b) unmonitored, zero
/// temperature; (c, d, e) protecting jumps at eta = 0.8, 0.9, 1.0.
std::vector<Figure3Series> figure3(const Figure3Options& options);

/// figure3 plus figure3_{a..e}.csv and figure3_analytic.csv in out_dir.
/// Returns the written paths.
std::vector<std::filesystem::path> write_figure3(const Figure3Options& options);

}  // namespace qtraj
