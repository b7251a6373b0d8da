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

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qmetric/basedist.hpp"
#include "qmetric/core.hpp"
#include "qmetric/tgospa.hpp"

namespace qmetric {

/// Portable random source: std::mt19937_64 (output sequence fixed by the
/// standard) with uniform, normal and Poisson draws built on its raw output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Seeds from std::seed_seq{seed, stream}; used for run `stream` of a batch.
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double prob) { return uniform() < prob; }
  /// Standard normal (Marsaglia polar method).
  double normal();
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Nearly-constant-velocity scenario. States are [px, vx, py, vy].
struct ScenarioConfig {
  int T = 101;
  double tau = 1.0;
  double q = 0.4;
  std::vector<double> birth_mean{400.0, 0.0, 400.0, 0.0};
  /// Row-major 4x4, symmetric positive definite.
  std::vector<double> birth_cov{300.0 * 300.0, 0, 0, 0, 0, 4.0, 0, 0, 0, 0, 300.0 * 300.0, 0, 0, 0, 0, 4.0};
  /// Probability of surviving each step after birth, on top of scheduled deaths.
  double survival_probability = 1.0;
  /// Birth step per object.
  std::vector<int> births;
  /// Step at which each object is first absent; T + 1 (or 0) for none.
  std::vector<int> deaths;
  std::uint64_t seed = 0;

  void validate() const;
};

TrajectorySet generate_scenario(const ScenarioConfig& cfg);

/// Four objects, T = 101, births {1,1,1,6}, deaths {30,75,80,100}.
ScenarioConfig fig3_config(std::uint64_t seed);
TrajectorySet generate_fig3_scenario(std::uint64_t seed);

struct CorruptionConfig {
  double detection_probability = 0.9;
  /// Mean clutter count per step.
  double clutter_rate = 20.0;
  /// Fraction of clutter promoted to false tracks.
  double false_track_fraction = 0.005;
  int false_track_min_length = 1;
  int false_track_max_length = 3;
  /// State components that carry position.
  std::vector<std::size_t> position_indices{0, 2};
  std::vector<double> area_min{0.0, 0.0};
  std::vector<double> area_max{800.0, 800.0};
  /// Row-major, symmetric positive semi-definite, over position_indices.
  std::vector<double> noise_cov{4.0, 0.0, 0.0, 4.0};
  /// Per-step probability of swapping two estimated identities.
  double switch_probability = 0.01;
  std::uint64_t seed = 0;

  void validate() const;
  /// No misses, clutter, noise or switches.
  static CorruptionConfig none();
};

/// Synthetic estimate: detections with noise, false tracks and identity
/// swaps, re-split into contiguous trajectories. Uses Rng(cfg.seed).
TrajectorySet corrupt(const TrajectorySet& truth, const CorruptionConfig& cfg);
TrajectorySet corrupt(const TrajectorySet& truth, const CorruptionConfig& cfg, Rng& rng);

struct RunBatch {
  TrajectorySet truth;
  std::vector<TrajectorySet> estimates;

  /// Throws InputError if windows differ.
  void validate() const;
};

/// `runs` corruptions of `truth`; run i draws from Rng(cfg.seed, i).
RunBatch make_batch(const TrajectorySet& truth, const CorruptionConfig& cfg, std::size_t runs);

/// Same batch with every state restricted to `components`.
RunBatch project(const RunBatch& batch, std::span<const std::size_t> components);

/// sqrt( (1/(N k)) sum_i d(X_k, Xhat_k^i)^2 ) over truncations to [1, k].
double rms_tgospa(const RunBatch& batch, const TgospaParams& params, const BaseDistance& base, int k,
                  Solver solver = Solver::exact);

/// rms_tgospa for k = 1..T, with mean per-step p-th-power components
/// (1/(N k)) sum_i comp_i. For p = 2 the components add up to d(k)^2.
struct RmsProfile {
  double rho = 0.5;
  std::vector<double> d;
  std::vector<double> localisation;
  std::vector<double> missed;
  std::vector<double> false_cost;
  std::vector<double> switch_cost;
};

/// One profile per rho, from a single solve per run and prefix.
std::vector<RmsProfile> rms_profile(const RunBatch& batch, const TgospaParams& params, std::span<const double> rhos,
                                    const BaseDistance& base, Solver solver = Solver::exact);

/// ( (1/N) sum_i d(X, Xhat^i)^pprime )^(1/pprime), pprime >= 1.
double expected_qmetric(const RunBatch& batch, const TgospaParams& params, const BaseDistance& base, double pprime,
                        Solver solver = Solver::exact);

}  // namespace qmetric
