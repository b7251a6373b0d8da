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

#include "qmetric/tgospa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qmetric/errors.hpp"
#include "qmetric/gospa.hpp"
#include "tgospa_problem.hpp"

namespace qmetric {

namespace detail {

Problem::Problem(const TrajectorySet& X, const TrajectorySet& Y, const GospaParams& params,
                 const BaseDistance& base)
    : window_(X.window()), nx_(X.size()), ny_(Y.size()), params_(params), cp_(params.cp()) {
  const auto T = static_cast<std::size_t>(window_);
  x_present_.assign(T * nx_, 0);
  y_present_.assign(T * ny_, 0);
  nx_at_.assign(T, 0);
  ny_at_.assign(T, 0);
  loc_.assign(T * nx_ * ny_, 0.0);
  eligible_.assign(T * nx_ * ny_, 0);
  relevant_.assign(nx_ * ny_, 0);
  for (int t = 0; t < window_; ++t) {
    const int k = t + 1;
    for (std::size_t i = 0; i < nx_; ++i) {
      if (X[i].present(k)) {
        x_present_[idx_x(t, i)] = 1;
        ++nx_at_[static_cast<std::size_t>(t)];
      }
    }
    for (std::size_t j = 0; j < ny_; ++j) {
      if (Y[j].present(k)) {
        y_present_[idx_y(t, j)] = 1;
        ++ny_at_[static_cast<std::size_t>(t)];
      }
    }
    for (std::size_t i = 0; i < nx_; ++i) {
      if (!x_present(t, i)) continue;
      for (std::size_t j = 0; j < ny_; ++j) {
        if (!y_present(t, j)) continue;
        const double d = base(X[i].at(k), Y[j].at(k));
        loc_[idx_xy(t, i, j)] = pow_p(std::min(d, params_.c), params_.p);
        if (d < params_.c) {
          eligible_[idx_xy(t, i, j)] = 1;
          relevant_[i * ny_ + j] = 1;
        }
      }
    }
  }
}

std::vector<Component> Problem::components() const {
  // Union-find over nodes: truths 0..nx-1, estimates nx..nx+ny-1.
  std::vector<std::size_t> parent(nx_ + ny_);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  for (std::size_t i = 0; i < nx_; ++i) {
    for (std::size_t j = 0; j < ny_; ++j) {
      if (!relevant(i, j)) continue;
      const std::size_t a = find(i);
      const std::size_t b = find(nx_ + j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> comp_of(nx_ + ny_, std::numeric_limits<std::size_t>::max());
  std::vector<Component> out;
  for (std::size_t i = 0; i < nx_; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < ny_ && !any; ++j) any = relevant(i, j);
    if (!any) continue;
    const std::size_t root = find(i);
    if (comp_of[root] == std::numeric_limits<std::size_t>::max()) {
      comp_of[root] = out.size();
      out.emplace_back();
    }
    Component& c = out[comp_of[root]];
    c.truths.push_back(i);
    for (std::size_t j = 0; j < ny_; ++j) {
      if (relevant(i, j)) c.pairs.emplace_back(i, j);
    }
  }
  for (std::size_t j = 0; j < ny_; ++j) {
    const std::size_t root = find(nx_ + j);
    if (root < nx_ && comp_of[root] != std::numeric_limits<std::size_t>::max()) {
      out[comp_of[root]].estimates.push_back(j);
    }
  }
  return out;
}

std::vector<StepReport> Problem::evaluate(const std::vector<AssignmentVector>& seq, double gamma) const {
  std::vector<StepReport> out(seq.size());
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const int ti = static_cast<int>(t);
    StepReport& s = out[t];
    s.k = ti + 1;
    std::size_t detected = 0;
    for (std::size_t i = 0; i < nx_; ++i) {
      const std::size_t a = seq[t][i];
      if (a != 0 && eligible(ti, i, a - 1)) {
        s.localisation += loc(ti, i, a - 1);
        ++detected;
      }
    }
    s.missed = (1.0 - params_.rho) * cp_ * static_cast<double>(nx_at(ti) - detected);
    s.false_cost = params_.rho * cp_ * static_cast<double>(ny_at(ti) - detected);
    if (t > 0) s.switch_cost = switch_cost(seq[t - 1], seq[t], gamma, params_.p);
  }
  return out;
}

void check_inputs(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& params) {
  params.validate();
  if (X.window() != Y.window()) {
    throw InputError("truth and estimate windows differ (T=" + std::to_string(X.window()) + " vs T=" +
                     std::to_string(Y.window()) + ")");
  }
  if (!X.empty() && !Y.empty() && X.dim() != Y.dim()) {
    throw ShapeError("truth and estimate states differ in dimension");
  }
}

MetricReport summarise(const std::vector<StepReport>& steps, double p) {
  std::vector<double> loc, missed, fals, sw;
  loc.reserve(steps.size());
  missed.reserve(steps.size());
  fals.reserve(steps.size());
  sw.reserve(steps.size());
  for (const auto& s : steps) {
    loc.push_back(s.localisation);
    missed.push_back(s.missed);
    fals.push_back(s.false_cost);
    sw.push_back(s.switch_cost);
  }
  return MetricReport::from_components(p, pairwise_sum(loc), pairwise_sum(missed), pairwise_sum(fals),
                                       pairwise_sum(sw));
}

}  // namespace detail

AssignmentMatrix::AssignmentMatrix(std::size_t num_truth, std::size_t num_estimate)
    : rows_(num_truth + 1), cols_(num_estimate + 1), values_(rows_ * cols_, 0.0) {}

namespace {

void check_vector(const AssignmentVector& pi, std::size_t nx, std::size_t ny) {
  if (pi.size() != nx) throw InputError("assignment vector length differs from the number of truths");
  std::vector<char> used(ny, 0);
  for (std::size_t v : pi) {
    if (v > ny) throw InputError("assignment vector entry exceeds the number of estimates");
    if (v == 0) continue;
    if (used[v - 1]) throw InputError("assignment vector assigns one estimate twice");
    used[v - 1] = 1;
  }
}

}  // namespace

AssignmentMatrix AssignmentMatrix::from_vector(const AssignmentVector& pi, std::size_t num_estimate) {
  check_vector(pi, pi.size(), num_estimate);
  AssignmentMatrix w(pi.size(), num_estimate);
  std::vector<char> taken(num_estimate, 0);
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (pi[i] == 0) {
      w(i, num_estimate) = 1.0;
    } else {
      w(i, pi[i] - 1) = 1.0;
      taken[pi[i] - 1] = 1;
    }
  }
  for (std::size_t j = 0; j < num_estimate; ++j) {
    if (!taken[j]) w(pi.size(), j) = 1.0;
  }
  return w;
}


StepCost step_cost(const TrajectorySet& X, const TrajectorySet& Y, const AssignmentVector& pi, int k,
                   const GospaParams& params, const BaseDistance& base) {
  params.validate();
  if (k < 1 || k > X.window() || k > Y.window()) throw RangeError("step_cost: time step outside window");
  check_vector(pi, X.size(), Y.size());
  const double cp = params.cp();
  StepCost out;
  std::size_t detected = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (pi[i] == 0) continue;
    const Trajectory& x = X[i];
    const Trajectory& y = Y[pi[i] - 1];
    if (!x.present(k) || !y.present(k)) continue;
    const double d = base(x.at(k), y.at(k));
    if (d < params.c) {
      out.localisation += pow_p(d, params.p);
      ++detected;
    }
  }
  out.false_cost = params.rho * cp * static_cast<double>(Y.count_at(k) - detected);
  out.missed = (1.0 - params.rho) * cp * static_cast<double>(X.count_at(k) - detected);
  return out;
}

double switch_cost(const AssignmentVector& pi, const AssignmentVector& next, double gamma, double p) {
  if (pi.size() != next.size()) throw InputError("switch_cost: assignment vectors differ in length");
  std::size_t halves = 0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (pi[i] == next[i]) continue;
    halves += (pi[i] != 0 && next[i] != 0) ? 2 : 1;
  }
  return pow_p(gamma, p) * 0.5 * static_cast<double>(halves);
}

std::size_t assignment_space_size(std::size_t num_truth, std::size_t num_estimate) {
  __extension__ using u128 = unsigned __int128;
  constexpr auto cap = static_cast<u128>(std::numeric_limits<std::size_t>::max());
  constexpr u128 u128_max = ~u128{0};
  // term_m = C(nX,m) C(nY,m) m! = term_{m-1} (nX-m+1)(nY-m+1) / m, exact in integers.
  u128 term = 1;
  u128 total = 1;
  for (std::size_t m = 1; m <= std::min(num_truth, num_estimate); ++m) {
    const u128 a = num_truth - m + 1;
    const u128 b = num_estimate - m + 1;
    if (term > u128_max / a) return std::numeric_limits<std::size_t>::max();
    term *= a;
    if (term > u128_max / b) return std::numeric_limits<std::size_t>::max();
    term = term * b / m;
    total += term;
    if (total >= cap || term >= cap) return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(total);
}

AssignmentMatrix step_cost_matrix(const TrajectorySet& X, const TrajectorySet& Y, int k,
                                  const GospaParams& params, const BaseDistance& base) {
  params.validate();
  if (k < 1 || k > X.window() || k > Y.window()) throw RangeError("step_cost_matrix: time step outside window");
  const std::size_t nx = X.size();
  const std::size_t ny = Y.size();
  AssignmentMatrix D(nx, ny);
  for (std::size_t i = 0; i <= nx; ++i) {
    const ObjectState* x = (i < nx && X[i].present(k)) ? &X[i].at(k) : nullptr;
    for (std::size_t j = 0; j <= ny; ++j) {
      if (i == nx && j == ny) continue;
      const ObjectState* y = (j < ny && Y[j].present(k)) ? &Y[j].at(k) : nullptr;
      D(i, j) = small_set_cost(x, y, params, base);
    }
  }
  return D;
}

TgospaResult tgospa(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& params,
                    const BaseDistance& base, Solver solver) {
  return solver == Solver::exact ? tgospa_exact(X, Y, params, base) : tgospa_lp(X, Y, params, base);
}

MetricReport decompose(const TrajectorySet& X, const TrajectorySet& Y, std::span<const AssignmentMatrix> W,
                       const TgospaParams& params, const BaseDistance& base, std::vector<StepReport>* per_step) {
  detail::check_inputs(X, Y, params);
  const detail::Problem prob(X, Y, params.gospa, base);
  const std::size_t nx = X.size();
  const std::size_t ny = Y.size();
  const int T = X.window();
  if (W.size() != static_cast<std::size_t>(T)) throw InputError("decompose: need one matrix per time step");
  constexpr double tol = 1e-8;
  for (const auto& w : W) {
    if (w.rows() != nx + 1 || w.cols() != ny + 1) throw InputError("decompose: matrix has the wrong shape");
    for (std::size_t i = 0; i <= nx; ++i) {
      for (std::size_t j = 0; j <= ny; ++j) {
        if (w(i, j) < -tol || !std::isfinite(w(i, j))) throw InputError("decompose: negative matrix entry");
      }
    }
    if (std::abs(w(nx, ny)) > tol) throw InputError("decompose: corner entry must be 0");
    for (std::size_t i = 0; i < nx; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j <= ny; ++j) s += w(i, j);
      if (std::abs(s - 1.0) > tol) throw InputError("decompose: row sum differs from 1");
    }
    for (std::size_t j = 0; j < ny; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i <= nx; ++i) s += w(i, j);
      if (std::abs(s - 1.0) > tol) throw InputError("decompose: column sum differs from 1");
    }
  }

  const double cp = prob.cp();
  const double rho = params.gospa.rho;
  const double half_gp = 0.5 * pow_p(params.gamma, params.gospa.p);
  std::vector<StepReport> steps(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    const AssignmentMatrix& w = W[static_cast<std::size_t>(t)];
    StepReport& s = steps[static_cast<std::size_t>(t)];
    s.k = t + 1;
    double detected = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < ny; ++j) {
        if (!prob.eligible(t, i, j)) continue;
        s.localisation += w(i, j) * prob.loc(t, i, j);
        detected += w(i, j);
      }
    }
    s.false_cost = rho * cp * (static_cast<double>(prob.ny_at(t)) - detected);
    s.missed = (1.0 - rho) * cp * (static_cast<double>(prob.nx_at(t)) - detected);
    if (t > 0) {
      const AssignmentMatrix& prev = W[static_cast<std::size_t>(t - 1)];
      double tv = 0.0;
      for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) tv += std::abs(w(i, j) - prev(i, j));
      }
      s.switch_cost = half_gp * tv;
    }
  }
  MetricReport r = detail::summarise(steps, params.gospa.p);
  if (per_step != nullptr) *per_step = std::move(steps);
  return r;
}

std::vector<TgospaResult> tgospa_sweep(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& params,
                                       std::span<const double> rhos, const BaseDistance& base, Solver solver) {
  // The optimal assignment does not depend on rho, so one solve at 1/2
  // serves every rho.
  TgospaParams half = params;
  half.gospa.rho = 0.5;
  const TgospaResult first = tgospa(X, Y, half, base, solver);
  std::vector<TgospaResult> out;
  out.reserve(rhos.size());
  for (double rho : rhos) {
    TgospaResult r = first;
    r.report = reprice(first.report, half.gospa, rho);
    for (auto& s : r.per_step) {
      s.missed *= 2.0 * (1.0 - rho);
      s.false_cost *= 2.0 * rho;
    }
    out.push_back(std::move(r));
  }
  return out;
}

double tgospa_symmetrise(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& params,
                         const BaseDistance& base, Solver solver) {
  if (!base.is_symmetric()) {
    throw ContractError("tgospa_symmetrise requires a symmetric base distance, got " + base.name());
  }
  const double a = tgospa(X, Y, params, base, solver).report.total_pth_power;
  const double b = tgospa(Y, X, params, base, solver).report.total_pth_power;
  const double mean = 0.5 * (a + b);
  return params.gospa.p == 1.0 ? mean : std::pow(mean, 1.0 / params.gospa.p);
}

}  // namespace qmetric
