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

// Experiment configuration and its JSON schema.
//
//   {
//     "model":         {"n_qubits": 2, "gamma_minus": 1.0, "gamma_plus": 1.0, "eta": 1.0},
//     "unraveling":    {"kind": "jump_protecting", "u": [[0, -1], [-1, 0]],
//                       "transform": [[...], [...]], "scheme": "milstein"},
//     "initial_state": {"name": "psi_plus"} | {"matrix": [[...], ...]},
//     "time":          {"dt": 1e-3, "t_max": 1.0, "sample_times": [...]} | {"sample_every": 0.1},
//     "ensemble":      {"n_trajectories": 1000, "master_seed": 1, "threads": 4},
//     "output":        "run.csv"
//   }
//
// Rates may be scalars or per-qubit lists. Matrix entries are numbers or
// [re, im] pairs. Unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qtraj/diffusive.hpp"
#include "qtraj/master.hpp"
#include "qtraj/qcore.hpp"

namespace qtraj {

enum class UnravelingKind {
  none,
  jump_canonical,
  jump_protecting,
  jump_transformed,
  diffusive,
  diffusive_protecting_unitary,
};

std::string_view to_string(UnravelingKind kind);
/// Throws ConfigError naming "unraveling.kind".
UnravelingKind parse_unraveling_kind(std::string_view name);

/// psi_plus, phi_plus, ghz, ground, excited, maximally_mixed.
DensityMatrix named_state(std::string_view name, int n_qubits);

struct ExperimentConfig {
  LindbladModel model = LindbladModel::uniform(2, 1.0, 1.0, 1.0);
  UnravelingKind unraveling = UnravelingKind::none;
  /// Noise correlation for `diffusive`, shared by all qubits.
  Matrix2c u = NoiseCorrelation::protecting().matrix();
  SmeScheme scheme = SmeScheme::milstein;
  /// Local unitary for `jump_transformed`, shared by all qubits.
  Matrix2c transform = Matrix2c::Identity();
  std::string initial_state_name = "psi_plus";
  std::optional<ComplexMatrix> initial_matrix;
  double dt = 1e-3;
  double t_max = 1.0;
  /// Empty means ten equal intervals over [0, t_max].
  std::vector<double> sample_times;
  std::uint64_t n_trajectories = 1;
  std::uint64_t master_seed = 0;
  /// Worker threads; unset means QTRAJ_THREADS or the hardware default.
  std::optional<unsigned> threads;
  std::string output;

  /// Throws ConfigError with the offending field name.
  void validate() const;
  TimeGrid grid() const;
  /// Grid indices of the sample times, ascending and unique.
  std::vector<std::size_t> sample_steps() const;
  DensityMatrix initial_state() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& config);

/// Parses a complex matrix written as rows of numbers or [re, im] pairs.
ComplexMatrix matrix_from_json(const nlohmann::json& j, std::string_view field);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

}  // namespace qtraj
