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

#include "qmetric/evalrfs.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qmetric/errors.hpp"

namespace qmetric {

namespace {

Eigen::MatrixXd square(const std::vector<double>& values, std::size_t n, const char* what) {
  if (values.size() != n * n) {
    throw ParameterError(std::string(what) + ": expected " + std::to_string(n * n) + " entries");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double v = values[r * n + c];
      if (!std::isfinite(v)) throw ParameterError(std::string(what) + ": non-finite entry");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw ParameterError(std::string(what) + ": matrix is not symmetric");
  }
  return m;
}

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& m, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw ParameterError(std::string(what) + ": matrix is not positive definite");
  return llt.matrixL();
}

// L with L L' = m for a positive semi-definite m.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) throw ParameterError(std::string(what) + ": eigen-decomposition failed");
  const Eigen::VectorXd ev = eig.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev.minCoeff() < -1e-12 * scale) {
    throw ParameterError(std::string(what) + ": matrix is not positive semi-definite");
  }
  return eig.eigenvectors() * ev.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

Eigen::VectorXd normal_vector(Rng& rng, Eigen::Index n) {
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
  return z;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

void check_probability(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw ParameterError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw ParameterError("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + r % span);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw ParameterError("poisson: mean must be finite and >= 0");
  // Knuth's product method on chunks of at most 16; a sum of Poissons is Poisson.
  std::uint64_t total = 0;
  while (mean > 0.0) {
    const double chunk = std::min(mean, 16.0);
    mean -= chunk;
    const double limit = std::exp(-chunk);
    double prod = uniform();
    while (prod > limit) {
      ++total;
      prod *= uniform();
    }
  }
  return total;
}

void ScenarioConfig::validate() const {
  if (T < 1) throw ParameterError("scenario: T must be >= 1");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError("scenario: tau must be > 0");
  if (!(q > 0.0) || !std::isfinite(q)) throw ParameterError("scenario: q must be > 0");
  if (birth_mean.size() != 4) throw ParameterError("scenario: birth mean needs 4 entries");
  for (double v : birth_mean) {
    if (!std::isfinite(v)) throw ParameterError("scenario: non-finite birth mean");
  }
  cholesky_factor(square(birth_cov, 4, "scenario birth covariance"), "scenario birth covariance");
  if (!(survival_probability > 0.0 && survival_probability <= 1.0)) {
    throw ParameterError("scenario: survival probability must lie in (0, 1]");
  }
  if (!deaths.empty() && deaths.size() != births.size()) {
    throw ParameterError("scenario: births and deaths differ in length");
  }
  for (std::size_t i = 0; i < births.size(); ++i) {
    if (births[i] < 1 || births[i] > T) throw ParameterError("scenario: birth step outside [1, T]");
    if (!deaths.empty() && deaths[i] != 0 && (deaths[i] <= births[i] || deaths[i] > T + 1)) {
      throw ParameterError("scenario: death step must lie in (birth, T + 1]");
    }
  }
}

TrajectorySet generate_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const Eigen::MatrixXd birth_l = cholesky_factor(square(cfg.birth_cov, 4, "birth covariance"), "birth covariance");
  const Eigen::Map<const Eigen::Vector4d> mean(cfg.birth_mean.data());

  const double tau = cfg.tau;
  Eigen::Matrix4d F = Eigen::Matrix4d::Identity();
  F(0, 1) = tau;
  F(2, 3) = tau;
  Eigen::Matrix2d q_axis;
  q_axis << tau * tau * tau / 3.0, tau * tau / 2.0, tau * tau / 2.0, tau;
  q_axis *= cfg.q;
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(4, 4);
  Q.block<2, 2>(0, 0) = q_axis;
  Q.block<2, 2>(2, 2) = q_axis;
  const Eigen::MatrixXd q_l = cholesky_factor(Q, "process noise");

  std::vector<Trajectory> out;
  out.reserve(cfg.births.size());
  for (std::size_t i = 0; i < cfg.births.size(); ++i) {
    const int birth = cfg.births[i];
    const int death = (cfg.deaths.empty() || cfg.deaths[i] == 0) ? cfg.T + 1 : cfg.deaths[i];
    Eigen::VectorXd x = mean + birth_l * normal_vector(rng, 4);
    std::vector<ObjectState> states{ObjectState(to_std(x))};
    for (int k = birth + 1; k < death; ++k) {
      if (cfg.survival_probability < 1.0 && !rng.bernoulli(cfg.survival_probability)) break;
      x = F * x + q_l * normal_vector(rng, 4);
      states.emplace_back(to_std(x));
    }
    out.emplace_back(birth, std::move(states));
  }
  return TrajectorySet(cfg.T, std::move(out));
}

ScenarioConfig fig3_config(std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.births = {1, 1, 1, 6};
  cfg.deaths = {30, 75, 80, 100};
  cfg.seed = seed;
  return cfg;
}

TrajectorySet generate_fig3_scenario(std::uint64_t seed) { return generate_scenario(fig3_config(seed)); }

void CorruptionConfig::validate() const {
  check_probability(detection_probability, "detection probability");
  check_probability(switch_probability, "switch probability");
  check_probability(false_track_fraction, "false-track fraction");
  if (!(clutter_rate >= 0.0) || !std::isfinite(clutter_rate)) throw ParameterError("clutter rate must be >= 0");
  if (false_track_min_length < 1 || false_track_max_length < false_track_min_length) {
    throw ParameterError("false-track lengths must satisfy 1 <= min <= max");
  }
  const std::size_t n = position_indices.size();
  if (n == 0) throw ParameterError("corruption needs at least one position index");
  if (area_min.size() != n || area_max.size() != n) {
    throw ParameterError("clutter area bounds must match the position indices");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(area_min[i]) || !std::isfinite(area_max[i]) || area_max[i] < area_min[i]) {
      throw ParameterError("clutter area bounds must be finite with min <= max");
    }
  }
  psd_factor(square(noise_cov, n, "measurement noise covariance"), "measurement noise covariance");
}

CorruptionConfig CorruptionConfig::none() {
  CorruptionConfig cfg;
  cfg.detection_probability = 1.0;
  cfg.clutter_rate = 0.0;
  cfg.noise_cov.assign(cfg.noise_cov.size(), 0.0);
  cfg.switch_probability = 0.0;
  return cfg;
}

TrajectorySet corrupt(const TrajectorySet& truth, const CorruptionConfig& cfg) {
  Rng rng(cfg.seed);
  return corrupt(truth, cfg, rng);
}

TrajectorySet corrupt(const TrajectorySet& truth, const CorruptionConfig& cfg, Rng& rng) {
  cfg.validate();
  const std::size_t npos = cfg.position_indices.size();
  const std::size_t max_index = *std::max_element(cfg.position_indices.begin(), cfg.position_indices.end());
  const std::size_t dim = truth.empty() ? max_index + 1 : truth.dim();
  if (max_index >= dim) throw ParameterError("position index beyond the state dimension");
  const Eigen::MatrixXd noise_l = psd_factor(square(cfg.noise_cov, npos, "noise covariance"), "noise covariance");
  const int T = truth.window();
  const std::size_t n = truth.size();

  struct Point {
    int k;
    std::vector<double> x;
  };
  std::vector<std::vector<Point>> tracks(n);
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  std::vector<Trajectory> false_tracks;

  for (int k = 1; k <= T; ++k) {
    if (k > 1 && rng.bernoulli(cfg.switch_probability)) {
      std::vector<std::size_t> alive;
      for (std::size_t i = 0; i < n; ++i) {
        if (truth[i].present(k)) alive.push_back(i);
      }
      if (alive.size() >= 2) {
        const auto last = static_cast<std::int64_t>(alive.size()) - 1;
        const auto a = static_cast<std::size_t>(rng.uniform_int(0, last));
        auto b = static_cast<std::size_t>(rng.uniform_int(0, last - 1));
        if (b >= a) ++b;
        std::swap(label[alive[a]], label[alive[b]]);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!truth[i].present(k)) continue;
      if (!rng.bernoulli(cfg.detection_probability)) continue;
      std::vector<double> x(truth[i].at(k).coords().begin(), truth[i].at(k).coords().end());
      const Eigen::VectorXd w = noise_l * normal_vector(rng, static_cast<Eigen::Index>(npos));
      for (std::size_t d = 0; d < npos; ++d) x[cfg.position_indices[d]] += w(static_cast<Eigen::Index>(d));
      tracks[label[i]].push_back({k, std::move(x)});
    }
    const std::uint64_t births = rng.poisson(cfg.clutter_rate * cfg.false_track_fraction);
    for (std::uint64_t b = 0; b < births; ++b) {
      const auto len = static_cast<int>(rng.uniform_int(cfg.false_track_min_length, cfg.false_track_max_length));
      const int steps = std::min(len, T - k + 1);
      std::vector<ObjectState> states;
      for (int s = 0; s < steps; ++s) {
        std::vector<double> x(dim, 0.0);
        for (std::size_t d = 0; d < npos; ++d) x[cfg.position_indices[d]] = rng.uniform(cfg.area_min[d], cfg.area_max[d]);
        states.emplace_back(std::move(x));
      }
      false_tracks.emplace_back(k, std::move(states));
    }
  }

  std::vector<Trajectory> out;
  for (auto& track : tracks) {
    std::size_t begin = 0;
    while (begin < track.size()) {
      std::size_t end = begin + 1;
      while (end < track.size() && track[end].k == track[end - 1].k + 1) ++end;
      std::vector<ObjectState> states;
      for (std::size_t s = begin; s < end; ++s) states.emplace_back(std::move(track[s].x));
      out.emplace_back(track[begin].k, std::move(states));
      begin = end;
    }
  }
  for (auto& t : false_tracks) out.push_back(std::move(t));
  return TrajectorySet(T, std::move(out));
}

void RunBatch::validate() const {
  for (const auto& e : estimates) {
    if (e.window() != truth.window()) throw InputError("run batch: estimate window differs from truth window");
  }
}

RunBatch make_batch(const TrajectorySet& truth, const CorruptionConfig& cfg, std::size_t runs) {
  RunBatch batch{truth, {}};
  batch.estimates.reserve(runs);
  for (std::size_t i = 0; i < runs; ++i) {
    Rng rng(cfg.seed, i);
    batch.estimates.push_back(corrupt(truth, cfg, rng));
  }
  return batch;
}

RunBatch project(const RunBatch& batch, std::span<const std::size_t> components) {
  RunBatch out{project(batch.truth, components), {}};
  out.estimates.reserve(batch.estimates.size());
  for (const auto& e : batch.estimates) out.estimates.push_back(project(e, components));
  return out;
}

double rms_tgospa(const RunBatch& batch, const TgospaParams& params, const BaseDistance& base, int k, Solver solver) {
  params.validate();
  batch.validate();
  if (batch.estimates.empty()) throw InputError("rms_tgospa: empty run batch");
  if (k < 1 || k > batch.truth.window()) throw RangeError("rms_tgospa: time step outside window");
  const TrajectorySet truth = truncate(batch.truth, k);
  std::vector<double> squares;
  squares.reserve(batch.estimates.size());
  for (const auto& e : batch.estimates) {
    const double d = tgospa(truth, truncate(e, k), params, base, solver).report.total;
    squares.push_back(d * d);
  }
  return std::sqrt(pairwise_sum(squares) / (static_cast<double>(squares.size()) * k));
}

std::vector<RmsProfile> rms_profile(const RunBatch& batch, const TgospaParams& params, std::span<const double> rhos,
                                    const BaseDistance& base, Solver solver) {
  params.validate();
  batch.validate();
  if (batch.estimates.empty()) throw InputError("rms_profile: empty run batch");
  for (double rho : rhos) {
    GospaParams g = params.gospa;
    g.rho = rho;
    g.validate();
  }
  const int T = batch.truth.window();
  const std::size_t N = batch.estimates.size();
  TgospaParams half = params;
  half.gospa.rho = 0.5;

  // reports[i * T + (k-1)] at rho = 1/2.
  std::vector<MetricReport> reports(N * static_cast<std::size_t>(T));
  for (std::size_t i = 0; i < N; ++i) {
    std::vector<MetricReport> prefix;
    if (solver == Solver::exact) {
      prefix = tgospa_exact_prefixes(batch.truth, batch.estimates[i], half, base);
    } else {
      for (int k = 1; k <= T; ++k) {
        prefix.push_back(tgospa_lp(truncate(batch.truth, k), truncate(batch.estimates[i], k), half, base).report);
      }
    }
    std::copy(prefix.begin(), prefix.end(), reports.begin() + static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(T)));
  }

  std::vector<RmsProfile> out;
  out.reserve(rhos.size());
  std::vector<double> sq(N), loc(N), mis(N), fal(N), sw(N);
  for (double rho : rhos) {
    RmsProfile prof;
    prof.rho = rho;
    for (int k = 1; k <= T; ++k) {
      for (std::size_t i = 0; i < N; ++i) {
        const MetricReport r = reprice(reports[i * static_cast<std::size_t>(T) + static_cast<std::size_t>(k - 1)],
                                       half.gospa, rho);
        sq[i] = r.total * r.total;
        loc[i] = r.localisation;
        mis[i] = r.missed;
        fal[i] = r.false_cost;
        sw[i] = r.switch_cost;
      }
      const double norm = static_cast<double>(N) * k;
      prof.d.push_back(std::sqrt(pairwise_sum(sq) / norm));
      prof.localisation.push_back(pairwise_sum(loc) / norm);
      prof.missed.push_back(pairwise_sum(mis) / norm);
      prof.false_cost.push_back(pairwise_sum(fal) / norm);
      prof.switch_cost.push_back(pairwise_sum(sw) / norm);
    }
    out.push_back(std::move(prof));
  }
  return out;
}

double expected_qmetric(const RunBatch& batch, const TgospaParams& params, const BaseDistance& base, double pprime,
                        Solver solver) {
  params.validate();
  batch.validate();
  if (!(pprime >= 1.0) || !std::isfinite(pprime)) throw ParameterError("expected_qmetric: p' must be >= 1");
  if (batch.estimates.empty()) throw InputError("expected_qmetric: empty run batch");
  std::vector<double> powers;
  powers.reserve(batch.estimates.size());
  for (const auto& e : batch.estimates) {
    powers.push_back(pow_p(tgospa(batch.truth, e, params, base, solver).report.total, pprime));
  }
  const double mean = pairwise_sum(powers) / static_cast<double>(powers.size());
  return pprime == 1.0 ? mean : std::pow(mean, 1.0 / pprime);
}

}  // namespace qmetric
