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

// qtraj command-line front end.
//
//   qtraj master    [--config FILE] [model/time flags] [--output FILE]
//   qtraj jump      [--config FILE] [--kind canonical|protecting|transformed] ...
//   qtraj diffusive [--config FILE] [--unitary] [--u JSON] [--scheme S] ...
//   qtraj figure3   [--gamma G] [--dt DT] [--t-max T] [--out-dir DIR] ...
//   qtraj params    --omega W --big-gamma G [--gamma-minus g]
//
// Exit status: 0 success, 2 configuration error, 3 numerical invariant
// violation, 4 I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtraj/config.hpp"
#include "qtraj/csv.hpp"
#include "qtraj/error.hpp"
#include "qtraj/reservoir.hpp"
#include "qtraj/runner.hpp"

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct RunFlags {
  std::string config;
  std::optional<int> n_qubits;
  std::optional<double> gamma_minus;
  std::optional<double> gamma_plus;
  std::optional<double> eta;
  std::optional<double> dt;
  std::optional<double> t_max;
  std::optional<double> sample_every;
  std::optional<std::string> initial_state;
  std::optional<std::uint64_t> n_trajectories;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> output;
  // jump
  std::string jump_kind = "protecting";
  std::optional<std::string> transform;
  // diffusive
  bool unitary = false;
  std::optional<std::string> u;
  std::optional<std::string> scheme;
};

void add_common(CLI::App* cmd, RunFlags& f, bool ensemble) {
  cmd->add_option("--config", f.config, "JSON experiment config");
  cmd->add_option("--n-qubits", f.n_qubits, "number of qubits");
  cmd->add_option("--gamma-minus", f.gamma_minus, "decay rate on every qubit");
  cmd->add_option("--gamma-plus", f.gamma_plus, "pump rate on every qubit");
  cmd->add_option("--eta", f.eta, "detection efficiency");
  cmd->add_option("--dt", f.dt, "time step");
  cmd->add_option("--t-max", f.t_max, "final time");
  cmd->add_option("--sample-every", f.sample_every, "sampling interval (multiple of dt)");
  cmd->add_option("--initial-state", f.initial_state, "named initial state");
  cmd->add_option("--output", f.output, "CSV path (stdout if omitted)");
  if (ensemble) {
    cmd->add_option("--n-trajectories", f.n_trajectories, "ensemble size");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--threads", f.threads, "worker threads");
  }
}

json parse_json_flag(const std::string& text, const std::string& flag) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    throw qtraj::ConfigError(flag + ": expected a JSON matrix");
  }
}

json load_json(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw qtraj::IoError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw qtraj::ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

qtraj::ExperimentConfig build_config(const RunFlags& f, std::optional<std::string> kind) {
  json j = load_json(f.config);
  if (!j.is_object()) throw qtraj::ConfigError("config: expected a JSON object");
  auto section = [&j](const char* name) -> json& {
    if (!j.contains(name)) j[name] = json::object();
    return j[name];
  };
  if (f.n_qubits) section("model")["n_qubits"] = *f.n_qubits;
  if (f.gamma_minus) section("model")["gamma_minus"] = *f.gamma_minus;
  if (f.gamma_plus) section("model")["gamma_plus"] = *f.gamma_plus;
  if (f.eta) section("model")["eta"] = *f.eta;
  if (f.dt) section("time")["dt"] = *f.dt;
  if (f.t_max) section("time")["t_max"] = *f.t_max;
  if (f.sample_every) {
    section("time").erase("sample_times");
    section("time")["sample_every"] = *f.sample_every;
  }
  if (f.initial_state) section("initial_state") = {{"name", *f.initial_state}};
  if (f.n_trajectories) section("ensemble")["n_trajectories"] = *f.n_trajectories;
  if (f.seed) section("ensemble")["master_seed"] = *f.seed;
  if (f.threads) section("ensemble")["threads"] = *f.threads;
  if (f.output) j["output"] = *f.output;
  if (kind) section("unraveling")["kind"] = *kind;
  if (f.transform) section("unraveling")["transform"] = parse_json_flag(*f.transform, "--transform");
  if (f.u) section("unraveling")["u"] = parse_json_flag(*f.u, "--u");
  if (f.scheme) section("unraveling")["scheme"] = *f.scheme;
  return qtraj::config_from_json(j);
}

void report(const qtraj::ExperimentConfig& cfg, const qtraj::EnsembleStatistics& stats,
            bool recovered_view) {
  if (cfg.output.empty()) {
    qtraj::write_csv(std::cout, stats, qtraj::StatisticsView::per_trajectory);
    return;
  }
  qtraj::emit_csv(stats, cfg.output, qtraj::StatisticsView::per_trajectory);
  std::cerr << "wrote " << cfg.output << '\n';
  if (recovered_view) {
    const auto sibling = qtraj::recovered_sibling(cfg.output);
    qtraj::emit_csv(stats, sibling, qtraj::StatisticsView::recovered);
    std::cerr << "wrote " << sibling.string() << '\n';
  }
}

std::string jump_kind_name(const std::string& kind) {
  if (kind == "canonical" || kind == "protecting" || kind == "transformed") return "jump_" + kind;
  throw qtraj::ConfigError("--kind: expected canonical, protecting or transformed");
}

int run(int argc, char** argv) {
  CLI::App app{"Quantum trajectory simulator for locally decaying qubits"};
  app.require_subcommand(1);

  RunFlags master_flags, jump_flags, diffusive_flags;
  CLI::App* master = app.add_subcommand("master", "integrate the master equation");
  add_common(master, master_flags, false);

  CLI::App* jump = app.add_subcommand("jump", "quantum-jump ensemble");
  add_common(jump, jump_flags, true);
  jump->add_option("--kind", jump_flags.jump_kind, "canonical, protecting or transformed");
  jump->add_option("--transform", jump_flags.transform, "2x2 unitary as a JSON matrix");

  CLI::App* diffusive = app.add_subcommand("diffusive", "diffusive (homodyne) ensemble");
  add_common(diffusive, diffusive_flags, true);
  diffusive->add_flag("--unitary", diffusive_flags.unitary,
                      "exact local-unitary path for the protecting correlation");
  diffusive->add_option("--u", diffusive_flags.u, "noise correlation as a JSON 2x2 matrix");
  diffusive->add_option("--scheme", diffusive_flags.scheme, "milstein or euler_maruyama");

  qtraj::Figure3Options fig;
  std::string out_dir = ".";
  CLI::App* figure3 = app.add_subcommand("figure3", "concurrence curves for the five panels");
  figure3->add_option("--gamma", fig.gamma, "rate gamma");
  figure3->add_option("--dt", fig.dt, "time step");
  figure3->add_option("--t-max", fig.t_max, "final time");
  figure3->add_option("--sample-every", fig.sample_every, "sampling interval");
  figure3->add_option("--n-trajectories", fig.n_trajectories, "trajectories per monitored panel");
  figure3->add_option("--seed", fig.master_seed, "master seed");
  figure3->add_option("--threads", fig.threads, "worker threads");
  figure3->add_option("--out-dir", out_dir, "output directory");

  qtraj::DriveParams drive;
  double validity_ratio = qtraj::kDefaultValidityRatio;
  CLI::App* params = app.add_subcommand("params", "engineered-reservoir rates");
  params->add_option("--omega", drive.omega, "drive strength")->required();
  params->add_option("--big-gamma", drive.big_gamma, "auxiliary-level decay rate")->required();
  params->add_option("--gamma-minus", drive.gamma_minus, "natural decay rate");
  params->add_option("--validity-ratio", validity_ratio, "adiabatic threshold omega/big_gamma");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (master->parsed()) {
    const auto cfg = build_config(master_flags, std::string("none"));
    report(cfg, qtraj::run_ensemble(cfg, 1), false);
  } else if (jump->parsed()) {
    const auto cfg = build_config(jump_flags, jump_kind_name(jump_flags.jump_kind));
    report(cfg, qtraj::run_ensemble(cfg), true);
  } else if (diffusive->parsed()) {
    const auto cfg = build_config(diffusive_flags, diffusive_flags.unitary
                                                       ? std::string("diffusive_protecting_unitary")
                                                       : std::string("diffusive"));
    report(cfg, qtraj::run_ensemble(cfg), diffusive_flags.unitary);
  } else if (figure3->parsed()) {
    fig.out_dir = out_dir;
    for (const auto& path : qtraj::write_figure3(fig)) std::cerr << "wrote " << path.string() << '\n';
  } else if (params->parsed()) {
    const qtraj::PumpRate pump = qtraj::engineered_pump_rate(drive, validity_ratio);
    std::cout << "gamma_plus=" << qtraj::format_value(pump.rate) << '\n';
    std::cout << "adiabatic=" << (pump.adiabatic_ok ? "ok" : "warn") << '\n';
    if (drive.gamma_minus > 0.0) {
      std::cout << "balanced_omega="
                << qtraj::format_value(qtraj::balanced_drive_strength(drive.gamma_minus, drive.big_gamma))
                << '\n';
      if (pump.rate < drive.gamma_minus) {
        std::cout << "n_bar=" << qtraj::format_value(qtraj::thermal_occupation(drive.gamma_minus, pump.rate))
                  << '\n';
      } else {
        std::cout << "n_bar=inf\n";
      }
    }
    if (!pump.adiabatic_ok) {
      std::cerr << "warning: omega > " << validity_ratio
                << " * big_gamma; adiabatic elimination may not hold\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qtraj::IoError& e) {
    std::cerr << "qtraj: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const qtraj::NumericalError& e) {
    std::cerr << "qtraj: numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const qtraj::Error& e) {
    std::cerr << "qtraj: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "qtraj: " << e.what() << '\n';
    return kExitConfig;
  }
}
