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

// Brute-force reference implementations and random instance generators.
// Written straight from the metric definitions, sharing no code with the
// library solvers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "qmetric/basedist.hpp"
#include "qmetric/core.hpp"

namespace oracle {

using qmetric::BaseDistance;
using qmetric::GospaParams;
using qmetric::ObjectSet;
using qmetric::ObjectState;
using qmetric::TgospaParams;
using qmetric::Trajectory;
using qmetric::TrajectorySet;

inline double powp(double v, double p) { return v == 0.0 ? 0.0 : std::pow(v, p); }

// GOSPA q-metric (p-th power) by enumerating every partial matching theta
// with raw base distances: sum d^p + rho c^p (|y|-|theta|) + (1-rho) c^p (|x|-|theta|).
inline double gospa_pth(const ObjectSet& x, const ObjectSet& y, const GospaParams& g, const BaseDistance& d) {
  const double cp = powp(g.c, g.p);
  const std::size_t nx = x.size(), ny = y.size();
  std::vector<char> used(ny, 0);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, double, std::size_t)> rec = [&](std::size_t i, double acc, std::size_t matched) {
    if (i == nx) {
      const double v = acc + g.rho * cp * static_cast<double>(ny - matched) +
                       (1.0 - g.rho) * cp * static_cast<double>(nx - matched);
      best = std::min(best, v);
      return;
    }
    rec(i + 1, acc, matched);
    for (std::size_t j = 0; j < ny; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      rec(i + 1, acc + powp(d(x[i], y[j]), g.p), matched + 1);
      used[j] = 0;
    }
  };
  rec(0, 0.0, 0);
  return best;
}

inline double gospa(const ObjectSet& x, const ObjectSet& y, const GospaParams& g, const BaseDistance& d) {
  return std::pow(gospa_pth(x, y, g, d), 1.0 / g.p);
}

// All assignment vectors for nx truths and ny estimates (0 = unassigned,
// j = estimate j-1).
inline std::vector<std::vector<std::size_t>> all_vectors(std::size_t nx, std::size_t ny) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(nx, 0);
  std::vector<char> used(ny + 1, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == nx) {
      out.push_back(cur);
      return;
    }
    for (std::size_t j = 0; j <= ny; ++j) {
      if (j > 0 && used[j]) continue;
      if (j > 0) used[j] = 1;
      cur[i] = j;
      rec(i + 1);
      if (j > 0) used[j] = 0;
    }
  };
  rec(0);
  return out;
}

// Per-step cost of assignment vector pi at step k, from the definition.
inline double step_cost(const TrajectorySet& X, const TrajectorySet& Y, const std::vector<std::size_t>& pi, int k,
                        const GospaParams& g, const BaseDistance& d) {
  const double cp = powp(g.c, g.p);
  double loc = 0.0;
  std::size_t theta = 0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (pi[i] == 0) continue;
    const auto& xi = X[i];
    const auto& yj = Y[pi[i] - 1];
    if (!xi.present(k) || !yj.present(k)) continue;
    const double dist = d(xi.at(k), yj.at(k));
    if (dist < g.c) {
      loc += powp(dist, g.p);
      ++theta;
    }
  }
  return loc + g.rho * cp * static_cast<double>(Y.count_at(k) - theta) +
         (1.0 - g.rho) * cp * static_cast<double>(X.count_at(k) - theta);
}

inline double switch_cost(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, double gamma,
                          double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    s += (a[i] != 0 && b[i] != 0) ? 1.0 : 0.5;
  }
  return powp(gamma, p) * s;
}

// T-GOSPA q-metric (p-th power) by enumerating all S^T sequences.
inline double tgospa_pth(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& t,
                         const BaseDistance& d) {
  const int T = X.window();
  const auto vecs = all_vectors(X.size(), Y.size());
  const std::size_t S = vecs.size();
  std::vector<double> stage(static_cast<std::size_t>(T) * S);
  for (int k = 1; k <= T; ++k) {
    for (std::size_t s = 0; s < S; ++s) stage[(k - 1) * S + s] = step_cost(X, Y, vecs[s], k, t.gospa, d);
  }
  std::vector<double> sw(S * S);
  for (std::size_t a = 0; a < S; ++a) {
    for (std::size_t b = 0; b < S; ++b) sw[a * S + b] = switch_cost(vecs[a], vecs[b], t.gamma, t.gospa.p);
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> seq(static_cast<std::size_t>(T));
  std::function<void(int, double)> rec = [&](int k, double acc) {
    if (acc >= best) return;
    if (k == T) {
      best = acc;
      return;
    }
    for (std::size_t s = 0; s < S; ++s) {
      double v = acc + stage[static_cast<std::size_t>(k) * S + s];
      if (k > 0) v += sw[seq[static_cast<std::size_t>(k - 1)] * S + s];
      seq[static_cast<std::size_t>(k)] = s;
      rec(k + 1, v);
    }
  };
  rec(0, 0.0);
  return best;
}

inline double tgospa(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& t, const BaseDistance& d) {
  return std::pow(tgospa_pth(X, Y, t, d), 1.0 / t.gospa.p);
}

// Random instances. Values are drawn on a coarse grid on purpose so that
// ties and distances exactly equal to c occur.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  std::mt19937_64& engine() { return eng_; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  bool coin(double p = 0.5) { return real(0.0, 1.0) < p; }

  double coord(double scale) {
    if (coin(0.3)) return 0.25 * integer(0, static_cast<int>(4 * scale));
    return real(0.0, scale);
  }

  ObjectState state(std::size_t dim, double scale) {
    std::vector<double> v(dim);
    for (auto& c : v) c = coord(scale);
    return ObjectState(std::move(v));
  }

  ObjectSet objects(std::size_t max_n, std::size_t dim, double scale) {
    std::vector<ObjectState> out(static_cast<std::size_t>(integer(0, static_cast<int>(max_n))),
                                 ObjectState{0.0});
    for (auto& s : out) s = state(dim, scale);
    return ObjectSet(std::move(out));
  }

  TrajectorySet trajectories(int T, std::size_t max_n, std::size_t dim, double scale) {
    const int n = integer(0, static_cast<int>(max_n));
    std::vector<Trajectory> out;
    for (int i = 0; i < n; ++i) {
      const int start = integer(1, T);
      const int len = integer(1, T - start + 1);
      std::vector<ObjectState> states;
      // Random walk so consecutive states stay close.
      ObjectState s = state(dim, scale);
      for (int k = 0; k < len; ++k) {
        states.push_back(s);
        std::vector<double> next(s.coords().begin(), s.coords().end());
        for (auto& c : next) c += real(-0.5, 0.5) * scale * 0.3;
        s = ObjectState(std::move(next));
      }
      out.emplace_back(start, std::move(states));
    }
    return TrajectorySet(T, std::move(out));
  }

  GospaParams gospa_params() {
    GospaParams g;
    g.c = real(0.5, 3.0);
    const double ps[] = {1.0, 1.0, 2.0, 1.5, 3.0};
    g.p = ps[integer(0, 4)];
    g.rho = coin(0.2) ? 0.5 : real(0.05, 0.95);
    return g;
  }

  TgospaParams tgospa_params() {
    TgospaParams t;
    t.gospa = gospa_params();
    t.gamma = coin(0.1) ? 0.05 : real(0.1, 3.0);
    return t;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace oracle
