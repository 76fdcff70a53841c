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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qtraj/config.hpp"
#include "qtraj/entangle.hpp"
#include "qtraj/error.hpp"
#include "support.hpp"

using namespace qtraj;
using nlohmann::json;
using qtraj::testing::max_abs;

namespace {

// Message of the ConfigError raised by parsing `j`, or "" if none.
std::string config_error(const json& j) {
  try {
    (void)config_from_json(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool names_field(const json& j, const std::string& field) {
  return config_error(j).rfind(field + ":", 0) == 0;
}

}  // namespace

TEST_CASE("defaults") {
  const ExperimentConfig cfg = config_from_json(json::object());
  CHECK(cfg.unraveling == UnravelingKind::none);
  CHECK(cfg.model.n_qubits == 2);
  CHECK(cfg.dt == 1e-3);
  CHECK(cfg.sample_steps().size() == 11);
  CHECK(cfg.sample_steps().back() == 1000);
  CHECK(std::abs(concurrence(cfg.initial_state()) - 1.0) < 1e-12);
}

TEST_CASE("full document") {
  const json j = json::parse(R"({
    "model": {"n_qubits": 2, "gamma_minus": [1.0, 0.5], "gamma_plus": 0.25, "eta": 0.9},
    "unraveling": {"kind": "jump_transformed", "transform": [[0.6, 0.8], [-0.8, 0.6]]},
    "initial_state": {"name": "phi_plus"},
    "time": {"dt": 0.001, "t_max": 0.5, "sample_every": 0.1},
    "ensemble": {"n_trajectories": 50, "master_seed": 7, "threads": 3},
    "output": "out.csv"
  })");
  const ExperimentConfig cfg = config_from_json(j);
  CHECK(cfg.unraveling == UnravelingKind::jump_transformed);
  CHECK(cfg.model.gamma_minus[1] == 0.5);
  CHECK(cfg.model.gamma_plus[0] == 0.25);
  CHECK(cfg.model.eta == 0.9);
  CHECK(cfg.transform(1, 0) == Complex(-0.8, 0.0));
  CHECK(cfg.sample_steps() == std::vector<std::size_t>{0, 100, 200, 300, 400, 500});
  CHECK(cfg.n_trajectories == 50);
  CHECK(cfg.master_seed == 7);
  CHECK(cfg.threads == 3u);
  CHECK(cfg.output == "out.csv");

  // Round trip through to_json.
  const ExperimentConfig back = config_from_json(to_json(cfg));
  CHECK(back.sample_steps() == cfg.sample_steps());
  CHECK(back.model.gamma_minus == cfg.model.gamma_minus);
  CHECK(max_abs(back.transform - cfg.transform) == 0.0);
  CHECK(back.unraveling == cfg.unraveling);
}

TEST_CASE("complex matrices") {
  const ComplexMatrix m = matrix_from_json(json::parse("[[0, [0, -1]], [[0, 1], 0]]"), "x");
  CHECK(max_abs(m - ComplexMatrix(pauli::y())) == 0.0);
  CHECK(max_abs(matrix_from_json(matrix_to_json(m), "x") - m) == 0.0);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[1, 2], [3]]"), "x"), ConfigError);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[]"), "x"), ConfigError);

  const json j = {{"initial_state", {{"matrix", json::parse("[[0.5, 0], [0, 0.5]]")}}},
                  {"model", {{"n_qubits", 1}}}};
  CHECK(max_abs(config_from_json(j).initial_state().matrix() - 0.5 * ComplexMatrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("errors name the offending field") {
  CHECK(names_field({{"bogus", 1}}, "bogus"));
  CHECK(names_field({{"model", {{"gama", 1}}}}, "model.gama"));
  CHECK(names_field({{"model", {{"n_qubits", 0}}}}, "model.n_qubits"));
  CHECK(names_field({{"model", {{"gamma_minus", -1.0}}}}, "model"));
  CHECK(names_field({{"unraveling", {{"kind", "teleport"}}}}, "unraveling.kind"));
  CHECK(names_field({{"unraveling", {{"scheme", "heun"}}}}, "unraveling.scheme"));
  CHECK(names_field({{"time", {{"dt", 0.1}}}}, "time.dt"));
  CHECK(names_field({{"time", {{"dt", 1e-3}, {"sample_every", 0.0015}}}}, "time.sample_every"));
  CHECK(names_field({{"time", {{"sample_times", {0.5, 2.0}}}}}, "time.sample_times"));
  CHECK(names_field({{"initial_state", {{"name", "cat"}}}}, "initial_state.name"));
  CHECK(names_field({{"ensemble", {{"n_trajectories", 0}}}}, "ensemble.n_trajectories"));
  CHECK(names_field({{"ensemble", {{"threads", 0}}}}, "ensemble.threads"));
  CHECK(names_field({{"unraveling", {{"kind", "diffusive"}}}, {"model", {{"eta", 0.5}}}}, "model.eta"));
  CHECK(names_field({{"unraveling", {{"kind", "diffusive"}, {"u", {{2, 0}, {0, 0}}}}}}, "unraveling.u"));
  CHECK(names_field({{"unraveling", {{"kind", "diffusive_protecting_unitary"}}},
                     {"model", {{"gamma_plus", 0.5}}}},
                    "model.gamma_plus"));
  CHECK(names_field({{"unraveling", {{"kind", "jump_transformed"}, {"transform", {{1, 1}, {0, 1}}}}}},
                    "unraveling.transform"));
  CHECK(names_field({{"initial_state", {{"name", "ground"}, {"matrix", {{1}}}}}}, "initial_state"));
}

TEST_CASE("named states") {
  CHECK(std::abs(concurrence(named_state("psi_plus", 2)) - 1.0) < 1e-12);
  CHECK(std::abs(concurrence(named_state("phi_plus", 2)) - 1.0) < 1e-12);
  CHECK(concurrence(named_state("ground", 2)) == 0.0);
  CHECK(std::abs(named_state("excited", 3).matrix()(7, 7).real() - 1.0) < 1e-15);
  CHECK(max_abs(named_state("maximally_mixed", 2).matrix() - 0.25 * ComplexMatrix::Identity(4, 4)) < 1e-15);
  const ComplexMatrix ghz = named_state("ghz", 3).matrix();
  CHECK(std::abs(ghz(0, 7).real() - 0.5) < 1e-15);
  CHECK_THROWS_AS(named_state("psi_plus", 3), ConfigError);
  CHECK_THROWS_AS(named_state("ghz", 1), ConfigError);
}

TEST_CASE("unraveling kind names") {
  for (UnravelingKind k : {UnravelingKind::none, UnravelingKind::jump_canonical, UnravelingKind::jump_protecting,
                           UnravelingKind::jump_transformed, UnravelingKind::diffusive,
                           UnravelingKind::diffusive_protecting_unitary}) {
    CHECK(parse_unraveling_kind(to_string(k)) == k);
  }
}

TEST_CASE("load_config") {
  const auto dir = std::filesystem::temp_directory_path() / "qtraj_test_config";
  std::filesystem::create_directories(dir);
  const auto good = dir / "good.json";
  std::ofstream(good) << R"({"unraveling": {"kind": "jump_protecting"}, "ensemble": {"n_trajectories": 4}})";
  CHECK(load_config(good).n_trajectories == 4);
  const auto bad = dir / "bad.json";
  std::ofstream(bad) << "{";
  CHECK_THROWS_AS(load_config(bad), ConfigError);
  CHECK_THROWS_AS(load_config(dir / "missing.json"), IoError);
  std::filesystem::remove_all(dir);
}
