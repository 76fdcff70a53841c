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
#include <cstdlib>

#include "doctest.h"
#include "qtraj/error.hpp"
#include "qtraj/master.hpp"
#include "qtraj/runner.hpp"

using namespace qtraj;

namespace {

ExperimentConfig ensemble(UnravelingKind kind, std::uint64_t n, double gamma_plus = 1.0, double eta = 1.0) {
  ExperimentConfig cfg;
  cfg.model = LindbladModel::uniform(2, 1.0, gamma_plus, eta);
  cfg.unraveling = kind;
  cfg.n_trajectories = n;
  cfg.master_seed = 3;
  return cfg;
}

void check_identical(const EnsembleStatistics& a, const EnsembleStatistics& b) {
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    CHECK(a.samples[k].mean_concurrence == b.samples[k].mean_concurrence);
    CHECK(a.samples[k].std_error == b.samples[k].std_error);
    CHECK(a.samples[k].recovered_concurrence == b.samples[k].recovered_concurrence);
    CHECK(a.samples[k].trace_dist_oracle == b.samples[k].trace_dist_oracle);
  }
}

}  // namespace

TEST_CASE("unmonitored runs report the master equation") {
  const EnsembleStatistics s = run_ensemble(ensemble(UnravelingKind::none, 1), 1);
  REQUIRE(s.samples.size() == 11);
  for (const SampleStatistics& x : s.samples) {
    CHECK(x.n == 1);
    CHECK(x.std_error == 0.0);
    CHECK(x.trace_dist_oracle == 0.0);
    CHECK(x.mean_concurrence ==
          doctest::Approx(analytic_concurrence(AnalyticCurve::infinite_temperature, 1.0, 1.0, x.time)).epsilon(1e-6));
  }
}

TEST_CASE("perfectly monitored protecting jumps keep every trajectory maximally entangled") {
  const EnsembleStatistics s = run_ensemble(ensemble(UnravelingKind::jump_protecting, 100), 2);
  for (const SampleStatistics& x : s.samples) {
    CHECK(x.n == 100);
    CHECK(std::abs(x.mean_concurrence - 1.0) < 1e-9);
    CHECK(x.std_error < 1e-10);
    CHECK(std::abs(x.recovered_concurrence - 1.0) < 1e-9);
    CHECK(x.max_recovered_deviation < 1e-9);
  }
}

TEST_CASE("canonical jumps at zero temperature") {
  const std::uint64_t n = 2000;
  const EnsembleStatistics s = run_ensemble(ensemble(UnravelingKind::jump_canonical, n, 0.0), 4);
  const SampleStatistics& last = s.samples.back();
  CHECK(last.time == doctest::Approx(1.0));
  const double sigma = std::sqrt(std::exp(-1.0) * (1.0 - std::exp(-1.0)) / static_cast<double>(n));
  CHECK(std::abs(last.mean_concurrence - std::exp(-1.0)) < 3.0 * sigma);
  CHECK(last.std_error == doctest::Approx(sigma).epsilon(0.1));
  CHECK(last.trace_dist_oracle < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("results do not depend on the thread count") {
  for (UnravelingKind kind : {UnravelingKind::jump_protecting, UnravelingKind::diffusive}) {
    ExperimentConfig cfg = ensemble(kind, 45, 1.0, kind == UnravelingKind::diffusive ? 1.0 : 0.8);
    cfg.t_max = 0.2;
    const EnsembleStatistics one = run_ensemble(cfg, 1);
    check_identical(one, run_ensemble(cfg, 3));
    check_identical(one, run_ensemble(cfg, 8));
    cfg.master_seed = 4;
    CHECK(run_ensemble(cfg, 1).samples.back().trace_dist_oracle != one.samples.back().trace_dist_oracle);
  }
}

TEST_CASE("unitary protecting path") {
  ExperimentConfig cfg = ensemble(UnravelingKind::diffusive_protecting_unitary, 20);
  const EnsembleStatistics s = run_ensemble(cfg, 2);
  for (const SampleStatistics& x : s.samples) {
    CHECK(std::abs(x.mean_concurrence - 1.0) < 1e-9);
    CHECK(x.max_recovered_deviation < 1e-8);
  }
}

TEST_CASE("thread count from the environment") {
  ::setenv("QTRAJ_THREADS", "3", 1);
  CHECK(default_thread_count() == 3);
  ::setenv("QTRAJ_THREADS", "many", 1);
  CHECK_THROWS_AS(default_thread_count(), ConfigError);
  ::unsetenv("QTRAJ_THREADS");
  CHECK(default_thread_count() >= 1);
}

TEST_CASE("figure series") {
  Figure3Options opt;
  opt.n_trajectories = 200;
  opt.threads = 4;
  const std::vector<Figure3Series> series = figure3(opt);
  REQUIRE(series.size() == 5);
  const auto value = [&](char label, std::size_t k) {
    const Figure3Series& s = series[static_cast<std::size_t>(label - 'a')];
    const SampleStatistics& x = s.stats.samples[k];
    return s.view == StatisticsView::recovered ? x.recovered_concurrence : x.mean_concurrence;
  };
  const std::size_t n = series[0].stats.samples.size();
  REQUIRE(n == 21);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = series[0].stats.samples[k].time;
    CHECK(std::abs(value('e', k) - 1.0) < 1e-9);
    CHECK(value('c', k) >= value('a', k));
    CHECK(value('b', k) == doctest::Approx(std::exp(-t)).epsilon(1e-6));
    if (t <= 0.4 + 1e-9) CHECK(value('a', k) > 0.0);
    if (t >= 0.45 - 1e-9) CHECK(value('a', k) == 0.0);
  }
}
