// Copyright 2026 The qmetric Authors
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

#include "doctest.h"
#include "qmetric/errors.hpp"
#include "qmetric/evalrfs.hpp"
#include "qmetric/tgospa.hpp"

using namespace qmetric;

namespace {

TgospaParams mc_params(double rho = 0.5) {
  TgospaParams t;
  t.gospa.c = 10.0;
  t.gospa.p = 2.0;
  t.gospa.rho = rho;
  t.gamma = 1.0;
  return t;
}

const std::size_t kPositions[] = {0, 2};

}  // namespace

TEST_CASE("rng is reproducible and roughly calibrated") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng s1(7, 0), s2(7, 1);
  CHECK(s1.next() != s2.next());

  Rng r(1);
  const int n = 200000;
  double sum = 0, sq = 0, u = 0;
  std::uint64_t pois = 0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    sum += z;
    sq += z * z;
    u += r.uniform();
    pois += r.poisson(3.5);
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.01);
  CHECK(std::abs(u / n - 0.5) < 0.005);
  CHECK(std::abs(static_cast<double>(pois) / n - 3.5) < 0.02);
  CHECK(r.poisson(0.0) == 0);
  for (int i = 0; i < 1000; ++i) {
    const auto v = r.uniform_int(-2, 2);
    CHECK(v >= -2);
    CHECK(v <= 2);
  }
  CHECK_THROWS_AS(r.poisson(-1.0), ParameterError);
}

TEST_CASE("scenario cardinality profile") {
  const auto s = generate_fig3_scenario(3);
  CHECK(s.window() == 101);
  CHECK(s.size() == 4);
  CHECK(s.dim() == 4);
  CHECK(s.count_at(1) == 3);
  CHECK(s.count_at(5) == 3);
  CHECK(s.count_at(6) == 4);
  CHECK(s.count_at(29) == 4);
  CHECK(s.count_at(30) == 3);
  CHECK(s.count_at(50) == 3);
  CHECK(s.count_at(75) == 2);
  CHECK(s.count_at(80) == 1);
  CHECK(s.count_at(99) == 1);
  CHECK(s.count_at(100) == 0);
  CHECK(s.count_at(101) == 0);
  CHECK(generate_fig3_scenario(3) == s);
  CHECK_FALSE(generate_fig3_scenario(4) == s);
}

TEST_CASE("velocity increments match the process noise") {
  ScenarioConfig cfg;
  cfg.T = 10001;
  cfg.births = {1};
  cfg.seed = 9;
  const auto s = generate_scenario(cfg);
  const auto& t = s[0];
  double sum = 0, sq = 0;
  const int n = static_cast<int>(t.duration()) - 1;
  for (int k = 1; k <= n; ++k) {
    const double dv = t.at(k + 1)[1] - t.at(k)[1];
    sum += dv;
    sq += dv * dv;
  }
  const double var = sq / n - (sum / n) * (sum / n);
  CHECK(var == doctest::Approx(0.4).epsilon(0.1));
}

TEST_CASE("scenario validation") {
  ScenarioConfig cfg;
  cfg.births = {1};
  cfg.tau = 0.0;
  CHECK_THROWS_AS(generate_scenario(cfg), ParameterError);
  cfg = ScenarioConfig{};
  cfg.births = {1};
  cfg.birth_cov[0] = -1.0;
  CHECK_THROWS_AS(generate_scenario(cfg), ParameterError);
  cfg = ScenarioConfig{};
  cfg.births = {5};
  cfg.deaths = {5};
  CHECK_THROWS_AS(generate_scenario(cfg), ParameterError);
  cfg = ScenarioConfig{};
  cfg.T = 50;
  cfg.births = {1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  cfg.survival_probability = 0.9;
  const auto s = generate_scenario(cfg);
  std::size_t total = 0;
  for (const auto& t : s) total += t.duration();
  CHECK(total < 10 * 50);
}

TEST_CASE("identity corruption returns the truth") {
  const auto truth = generate_fig3_scenario(5);
  CHECK(corrupt(truth, CorruptionConfig::none()) == truth);
  const auto batch = make_batch(truth, CorruptionConfig::none(), 3);
  for (const auto& e : batch.estimates) CHECK(e == truth);
}

TEST_CASE("zero detection probability leaves only false tracks") {
  const auto truth = generate_fig3_scenario(5);
  auto cfg = CorruptionConfig::none();
  cfg.detection_probability = 0.0;
  CHECK(corrupt(truth, cfg).empty());
  cfg.clutter_rate = 20.0;
  const auto e = corrupt(truth, cfg);
  for (const auto& t : e) {
    CHECK(t.duration() <= 3);
    CHECK(t.at(t.start())[1] == 0.0);
  }
}

TEST_CASE("detection frequency stays inside the binomial band") {
  const TrajectorySet truth(10, {Trajectory(1, std::vector<ObjectState>(10, ObjectState{1.0, 0.0, 1.0, 0.0}))});
  auto cfg = CorruptionConfig::none();
  cfg.detection_probability = 0.9;
  const auto batch = make_batch(truth, cfg, 1000);
  std::size_t detections = 0;
  for (const auto& e : batch.estimates) detections += e.total_states();
  const double n = 10000.0;
  const double sigma = std::sqrt(n * 0.9 * 0.1);
  CHECK(std::abs(static_cast<double>(detections) - 0.9 * n) <= 3.0 * sigma);
}

TEST_CASE("switches keep every detection and show up as switch cost") {
  const auto truth = generate_fig3_scenario(6);
  auto cfg = CorruptionConfig::none();
  cfg.switch_probability = 0.5;
  const auto e = corrupt(truth, cfg);
  CHECK(e.total_states() == truth.total_states());
  CHECK(e.size() >= truth.size());
  CHECK(tgospa_exact(truth, e, mc_params(), euclidean_distance()).report.switch_cost > 0.0);
  for (int k = 1; k <= truth.window(); ++k) CHECK(e.count_at(k) == truth.count_at(k));
}

TEST_CASE("corruption validation") {
  const auto truth = generate_fig3_scenario(1);
  CorruptionConfig cfg;
  cfg.detection_probability = 1.5;
  CHECK_THROWS_AS(corrupt(truth, cfg), ParameterError);
  cfg = CorruptionConfig{};
  cfg.noise_cov = {4.0, 0.0, 0.0, -1.0};
  CHECK_THROWS_AS(corrupt(truth, cfg), ParameterError);
  cfg = CorruptionConfig{};
  cfg.noise_cov = {4.0, 1.0, 0.0, 4.0};
  CHECK_THROWS_AS(corrupt(truth, cfg), ParameterError);
  cfg = CorruptionConfig{};
  cfg.position_indices = {0, 7};
  CHECK_THROWS_AS(corrupt(truth, cfg), ParameterError);
  cfg = CorruptionConfig{};
  cfg.false_track_min_length = 4;
  CHECK_THROWS_AS(corrupt(truth, cfg), ParameterError);
}

TEST_CASE("batches are deterministic") {
  const auto truth = generate_fig3_scenario(2);
  CorruptionConfig cfg;
  cfg.seed = 17;
  const auto a = make_batch(truth, cfg, 3);
  const auto b = make_batch(truth, cfg, 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a.estimates[i] == b.estimates[i]);
  CHECK_FALSE(a.estimates[0] == a.estimates[1]);
}

TEST_CASE("rms of a perfect batch is zero") {
  const auto truth = generate_fig3_scenario(8);
  const auto batch = project(make_batch(truth, CorruptionConfig::none(), 2), kPositions);
  const double rhos[] = {0.3, 0.5, 0.7};
  for (const auto& prof : rms_profile(batch, mc_params(), rhos, euclidean_distance())) {
    for (double v : prof.d) CHECK(v == 0.0);
  }
  CHECK(rms_tgospa(batch, mc_params(), euclidean_distance(), 50) == 0.0);
}

TEST_CASE("rms formula on a hand-built batch") {
  const auto d = euclidean_distance();
  TgospaParams t;
  t.gospa.c = 5.0;
  t.gospa.p = 2.0;
  t.gamma = 1.0;
  const TrajectorySet truth(2, {Trajectory(1, {{0.0}, {0.0}})});
  // Run 1: localisation error 1 at both steps -> d^2 = 2.
  // Run 2: nothing estimated -> two misses at (1 - rho) c^2 = 12.5 each -> d^2 = 25.
  const TrajectorySet e1(2, {Trajectory(1, {{1.0}, {1.0}})});
  const TrajectorySet e2(2, {});
  const RunBatch batch{truth, {e1, e2}};
  CHECK(rms_tgospa(batch, t, d, 2) == doctest::Approx(std::sqrt((2.0 + 25.0) / (2.0 * 2.0))));
  CHECK(rms_tgospa(batch, t, d, 1) == doctest::Approx(std::sqrt((1.0 + 12.5) / 2.0)));
  const double rhos[] = {0.5};
  const auto prof = rms_profile(batch, t, rhos, d);
  CHECK(prof[0].d[1] == doctest::Approx(rms_tgospa(batch, t, d, 2)));
  CHECK(prof[0].localisation[1] + prof[0].missed[1] + prof[0].false_cost[1] + prof[0].switch_cost[1] ==
        doctest::Approx(prof[0].d[1] * prof[0].d[1]));

  const RunBatch single{truth, {e1}};
  const double g = tgospa(truncate(truth, 1), truncate(e1, 1), t, d, Solver::exact).report.total;
  CHECK(rms_tgospa(single, t, d, 1) == doctest::Approx(g));
  CHECK_THROWS_AS(rms_tgospa(RunBatch{truth, {}}, t, d, 1), InputError);
  CHECK_THROWS_AS(rms_tgospa(batch, t, d, 3), RangeError);
}

TEST_CASE("expected q-metric") {
  const auto d = euclidean_distance();
  TgospaParams t;
  t.gospa.c = 5.0;
  t.gamma = 1.0;
  const TrajectorySet truth(1, {Trajectory(1, {{0.0}})});
  const TrajectorySet e1(1, {Trajectory(1, {{1.0}})});
  const TrajectorySet e2(1, {Trajectory(1, {{2.0}})});
  const TrajectorySet e3(1, {Trajectory(1, {{4.0}})});
  const RunBatch batch{truth, {e1, e2, e3}};
  CHECK(expected_qmetric(batch, t, d, 2.0) == doctest::Approx(std::sqrt((1.0 + 4.0 + 16.0) / 3.0)));
  CHECK(expected_qmetric(batch, t, d, 1.0) == doctest::Approx(7.0 / 3.0));
  CHECK(expected_qmetric(RunBatch{truth, {e2}}, t, d, 2.0) == doctest::Approx(2.0));
  CHECK(expected_qmetric(RunBatch{truth, {truth}}, t, d, 3.0) == 0.0);
  CHECK_THROWS_AS(expected_qmetric(batch, t, d, 0.5), ParameterError);
  CHECK_THROWS_AS(expected_qmetric(RunBatch{truth, {}}, t, d, 2.0), InputError);
}

TEST_CASE("extra false trajectories never lower the rms") {
  const auto truth = generate_fig3_scenario(12);
  CorruptionConfig cfg;
  cfg.seed = 5;
  auto batch = project(make_batch(truth, cfg, 4), kPositions);
  const double before = rms_tgospa(batch, mc_params(), euclidean_distance(), 101);
  for (auto& e : batch.estimates) {
    std::vector<Trajectory> ts(e.begin(), e.end());
    ts.emplace_back(40, std::vector<ObjectState>(5, ObjectState{5000.0, 5000.0}));
    e = TrajectorySet(e.window(), std::move(ts));
  }
  CHECK(rms_tgospa(batch, mc_params(), euclidean_distance(), 101) >= before);
}

TEST_CASE("empirical triangle inequality over shared runs") {
  const auto truth = truncate(project(generate_fig3_scenario(13), kPositions), 40);
  CorruptionConfig cfg;
  cfg.position_indices = {0, 1};
  cfg.seed = 1;
  const auto a = make_batch(truth, cfg, 5);
  cfg.seed = 2;
  const auto b = make_batch(truth, cfg, 5);
  TgospaParams t = mc_params(0.3);
  const auto d = euclidean_distance();
  std::vector<double> xz, xy, yz;
  for (std::size_t i = 0; i < 5; ++i) {
    xz.push_back(tgospa(truth, b.estimates[i], t, d, Solver::exact).report.total);
    xy.push_back(tgospa(truth, a.estimates[i], t, d, Solver::exact).report.total);
    yz.push_back(tgospa(a.estimates[i], b.estimates[i], t, d, Solver::exact).report.total);
  }
  auto rms = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s / static_cast<double>(v.size()));
  };
  CHECK(rms(xz) <= rms(xy) + rms(yz) + 1e-9);
}

TEST_CASE("lp and exact profiles agree on a short window") {
  const auto truth = truncate(generate_fig3_scenario(14), 12);
  CorruptionConfig cfg;
  cfg.seed = 3;
  const auto batch = project(make_batch(truth, cfg, 2), kPositions);
  const double rhos[] = {0.3, 0.7};
  const auto ex = rms_profile(batch, mc_params(), rhos, euclidean_distance(), Solver::exact);
  const auto lp = rms_profile(batch, mc_params(), rhos, euclidean_distance(), Solver::lp);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t k = 0; k < 12; ++k) CHECK(lp[r].d[k] <= ex[r].d[k] + 1e-8);
  }
}
