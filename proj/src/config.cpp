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

#include "qtraj/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "qtraj/error.hpp"
#include "qtraj/jumps.hpp"

namespace qtraj {

using nlohmann::json;

namespace {

constexpr int kDefaultSampleIntervals = 10;

struct KindName {
  UnravelingKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {UnravelingKind::none, "none"},
    {UnravelingKind::jump_canonical, "jump_canonical"},
    {UnravelingKind::jump_protecting, "jump_protecting"},
    {UnravelingKind::jump_transformed, "jump_transformed"},
    {UnravelingKind::diffusive, "diffusive"},
    {UnravelingKind::diffusive_protecting_unitary, "diffusive_protecting_unitary"},
};

[[noreturn]] void fail(std::string_view field, std::string_view what) {
  throw ConfigError(std::string(field) + ": " + std::string(what));
}

void check_keys(const json& j, std::string_view section, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) fail(section, "expected an object");
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      fail(std::string(section).empty() ? item.key() : std::string(section) + "." + item.key(),
           "unknown key");
    }
  }
}

double number(const json& j, std::string_view field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

std::uint64_t unsigned_integer(const json& j, std::string_view field) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    fail(field, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::string string(const json& j, std::string_view field) {
  if (!j.is_string()) fail(field, "expected a string");
  return j.get<std::string>();
}

std::vector<double> rates(const json& j, std::string_view field, int n_qubits) {
  if (j.is_number()) return std::vector<double>(static_cast<std::size_t>(n_qubits), j.get<double>());
  if (!j.is_array()) fail(field, "expected a number or a per-qubit list");
  if (static_cast<int>(j.size()) != n_qubits) fail(field, "list length must equal model.n_qubits");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, field));
  return out;
}

Complex complex_entry(const json& j, std::string_view field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(field, "matrix entries must be numbers or [re, im] pairs");
}

Matrix2c two_by_two(const json& j, std::string_view field) {
  const ComplexMatrix m = matrix_from_json(j, field);
  if (m.rows() != 2 || m.cols() != 2) fail(field, "expected a 2x2 matrix");
  return m;
}

json complex_to_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

SmeScheme parse_scheme(std::string_view name) {
  try {
    return parse_sme_scheme(name);
  } catch (const DomainError&) {
    fail("unraveling.scheme", "expected milstein, euler_maruyama or kraus");
  }
}

bool is_diffusive(UnravelingKind kind) {
  return kind == UnravelingKind::diffusive || kind == UnravelingKind::diffusive_protecting_unitary;
}

}  // namespace

std::string_view to_string(UnravelingKind kind) {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

UnravelingKind parse_unraveling_kind(std::string_view name) {
  for (const auto& k : kKindNames) {
    if (k.name == name) return k.kind;
  }
  fail("unraveling.kind", "unknown unraveling '" + std::string(name) + "'");
}

DensityMatrix named_state(std::string_view name, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) fail("model.n_qubits", "out of range");
  const std::string zeros(static_cast<std::size_t>(n_qubits), '0');
  const std::string ones(static_cast<std::size_t>(n_qubits), '1');
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "ground") return DensityMatrix::from_pure(basis_state(zeros));
  if (name == "excited") return DensityMatrix::from_pure(basis_state(ones));
  if (name == "maximally_mixed") return DensityMatrix::maximally_mixed(n_qubits);
  if (name == "ghz") {
    if (n_qubits < 2) fail("initial_state.name", "ghz needs at least two qubits");
    return DensityMatrix::from_pure(r * (basis_state(zeros) + basis_state(ones)));
  }
  if (name == "psi_plus" || name == "phi_plus") {
    if (n_qubits != 2) fail("initial_state.name", std::string(name) + " is a two-qubit state");
    return DensityMatrix::from_pure(
        name == "psi_plus" ? ComplexVector(r * (basis_state("01") + basis_state("10")))
                           : ComplexVector(r * (basis_state("00") + basis_state("11"))));
  }
  fail("initial_state.name", "unknown state '" + std::string(name) + "'");
}

ComplexMatrix matrix_from_json(const json& j, std::string_view field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) fail(field, "expected a non-empty list of rows");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      fail(field, "rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_entry(row[static_cast<std::size_t>(c)], field);
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

ExperimentConfig config_from_json(const json& j) {
  check_keys(j, "", {"model", "unraveling", "initial_state", "time", "ensemble", "output"});
  ExperimentConfig cfg;

  if (j.contains("model")) {
    const json& m = j["model"];
    check_keys(m, "model", {"n_qubits", "gamma_minus", "gamma_plus", "eta"});
    int n = cfg.model.n_qubits;
    if (m.contains("n_qubits")) {
      const std::uint64_t v = unsigned_integer(m["n_qubits"], "model.n_qubits");
      if (v < 1 || v > static_cast<std::uint64_t>(kMaxQubits)) {
        fail("model.n_qubits", "must be between 1 and " + std::to_string(kMaxQubits));
      }
      n = static_cast<int>(v);
    }
    LindbladModel model = LindbladModel::uniform(n, 1.0, 1.0, 1.0);
    if (m.contains("gamma_minus")) model.gamma_minus = rates(m["gamma_minus"], "model.gamma_minus", n);
    if (m.contains("gamma_plus")) model.gamma_plus = rates(m["gamma_plus"], "model.gamma_plus", n);
    if (m.contains("eta")) model.eta = number(m["eta"], "model.eta");
    cfg.model = model;
  }

  if (j.contains("unraveling")) {
    const json& u = j["unraveling"];
    check_keys(u, "unraveling", {"kind", "u", "transform", "scheme"});
    if (u.contains("kind")) cfg.unraveling = parse_unraveling_kind(string(u["kind"], "unraveling.kind"));
    if (u.contains("u")) cfg.u = two_by_two(u["u"], "unraveling.u");
    if (u.contains("transform")) cfg.transform = two_by_two(u["transform"], "unraveling.transform");
    if (u.contains("scheme")) cfg.scheme = parse_scheme(string(u["scheme"], "unraveling.scheme"));
  }

  if (j.contains("initial_state")) {
    const json& s = j["initial_state"];
    check_keys(s, "initial_state", {"name", "matrix"});
    if (s.contains("name") && s.contains("matrix")) {
      fail("initial_state", "give either name or matrix, not both");
    }
    if (s.contains("name")) cfg.initial_state_name = string(s["name"], "initial_state.name");
    if (s.contains("matrix")) cfg.initial_matrix = matrix_from_json(s["matrix"], "initial_state.matrix");
  }

  std::optional<double> sample_every;
  if (j.contains("time")) {
    const json& t = j["time"];
    check_keys(t, "time", {"dt", "t_max", "sample_times", "sample_every"});
    if (t.contains("dt")) cfg.dt = number(t["dt"], "time.dt");
    if (t.contains("t_max")) cfg.t_max = number(t["t_max"], "time.t_max");
    if (t.contains("sample_times") && t.contains("sample_every")) {
      fail("time", "give either sample_times or sample_every, not both");
    }
    if (t.contains("sample_times")) {
      if (!t["sample_times"].is_array()) fail("time.sample_times", "expected a list");
      for (const auto& v : t["sample_times"]) cfg.sample_times.push_back(number(v, "time.sample_times"));
    }
    if (t.contains("sample_every")) sample_every = number(t["sample_every"], "time.sample_every");
  }

  if (j.contains("ensemble")) {
    const json& e = j["ensemble"];
    check_keys(e, "ensemble", {"n_trajectories", "master_seed", "threads"});
    if (e.contains("n_trajectories")) {
      cfg.n_trajectories = unsigned_integer(e["n_trajectories"], "ensemble.n_trajectories");
    }
    if (e.contains("master_seed")) cfg.master_seed = unsigned_integer(e["master_seed"], "ensemble.master_seed");
    if (e.contains("threads")) {
      const std::uint64_t v = unsigned_integer(e["threads"], "ensemble.threads");
      if (v < 1 || v > 4096) fail("ensemble.threads", "must be between 1 and 4096");
      cfg.threads = static_cast<unsigned>(v);
    }
  }

  if (j.contains("output")) cfg.output = string(j["output"], "output");

  if (sample_every) {
    if (!(*sample_every > 0.0)) fail("time.sample_every", "must be positive");
    if (!(cfg.dt > 0.0)) fail("time.dt", "must be positive");
    const double ratio = *sample_every / cfg.dt;
    const double every = std::round(ratio);
    if (every < 1.0 || std::abs(ratio - every) > 1e-9 * ratio) {
      fail("time.sample_every", "must be a positive multiple of dt");
    }
    const TimeGrid grid = cfg.grid();
    const auto stride = static_cast<std::size_t>(every);
    for (std::size_t k = 0; k <= grid.n_steps; k += stride) cfg.sample_times.push_back(grid.time(k));
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["model"] = {{"n_qubits", cfg.model.n_qubits},
                {"gamma_minus", cfg.model.gamma_minus},
                {"gamma_plus", cfg.model.gamma_plus},
                {"eta", cfg.model.eta}};
  j["unraveling"] = {{"kind", std::string(to_string(cfg.unraveling))},
                     {"u", matrix_to_json(cfg.u)},
                     {"transform", matrix_to_json(cfg.transform)},
                     {"scheme", std::string(to_string(cfg.scheme))}};
  if (cfg.initial_matrix) {
    j["initial_state"] = {{"matrix", matrix_to_json(*cfg.initial_matrix)}};
  } else {
    j["initial_state"] = {{"name", cfg.initial_state_name}};
  }
  j["time"] = {{"dt", cfg.dt}, {"t_max", cfg.t_max}, {"sample_times", cfg.sample_times}};
  j["ensemble"] = {{"n_trajectories", cfg.n_trajectories}, {"master_seed", cfg.master_seed}};
  if (cfg.threads) j["ensemble"]["threads"] = *cfg.threads;
  j["output"] = cfg.output;
  return j;
}

TimeGrid ExperimentConfig::grid() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("time.dt", "must be positive");
  if (!(t_max >= dt) || !std::isfinite(t_max)) fail("time.t_max", "must be at least dt");
  try {
    return TimeGrid::make(dt, t_max);
  } catch (const DomainError& e) {
    fail("time.t_max", e.what());
  }
}

std::vector<std::size_t> ExperimentConfig::sample_steps() const {
  const TimeGrid g = grid();
  std::vector<std::size_t> steps;
  if (sample_times.empty()) {
    for (int k = 0; k <= kDefaultSampleIntervals; ++k) {
      const double exact = static_cast<double>(g.n_steps) * k / kDefaultSampleIntervals;
      steps.push_back(static_cast<std::size_t>(std::llround(exact)));
    }
  } else {
    for (double t : sample_times) {
      try {
        steps.push_back(g.step_of(t));
      } catch (const DomainError& e) {
        fail("time.sample_times", e.what());
      }
    }
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return steps;
}

DensityMatrix ExperimentConfig::initial_state() const {
  if (!initial_matrix) return named_state(initial_state_name, model.n_qubits);
  if (initial_matrix->rows() != model.dim() || initial_matrix->cols() != model.dim()) {
    fail("initial_state.matrix", "dimension must be 2^n_qubits");
  }
  try {
    return DensityMatrix(*initial_matrix);
  } catch (const Error& e) {
    fail("initial_state.matrix", e.what());
  }
}

void ExperimentConfig::validate() const {
  if (model.n_qubits < 1 || model.n_qubits > kMaxQubits) fail("model.n_qubits", "out of range");
  try {
    model.validate();
  } catch (const Error& e) {
    fail("model", e.what());
  }
  const TimeGrid g = grid();
  const double max_rate = model.max_rate();
  if (max_rate * dt > kMaxRateStep) {
    std::ostringstream os;
    os << "gamma dt = " << max_rate * dt << " exceeds " << kMaxRateStep;
    fail("time.dt", os.str());
  }
  (void)g;
  (void)sample_steps();
  if (n_trajectories < 1) fail("ensemble.n_trajectories", "must be at least 1");
  if (threads && *threads < 1) fail("ensemble.threads", "must be at least 1");
  (void)initial_state();

  if (is_diffusive(unraveling) && model.eta != 1.0) {
    fail("model.eta", "diffusive unravelings require eta = 1");
  }
  if (unraveling == UnravelingKind::diffusive) {
    try {
      NoiseCorrelation check(u);
      (void)noise_factor(check);
    } catch (const Error& e) {
      fail("unraveling.u", e.what());
    }
  }
  if (unraveling == UnravelingKind::diffusive_protecting_unitary && !model.balanced()) {
    fail("model.gamma_plus", "diffusive_protecting_unitary requires gamma_plus == gamma_minus");
  }
  if (unraveling == UnravelingKind::jump_transformed) {
    try {
      UnravelingTransform check{ComplexMatrix(transform)};
    } catch (const Error& e) {
      fail("unraveling.transform", e.what());
    }
  }
}

}  // namespace qtraj
