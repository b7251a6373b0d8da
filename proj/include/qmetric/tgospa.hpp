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

#include <cstddef>
#include <span>
#include <vector>

#include "qmetric/basedist.hpp"
#include "qmetric/core.hpp"
#include "qmetric/lp.hpp"

namespace qmetric {

/// Trajectory-level assignment at one time step. Entry i is 0 when truth
/// trajectory i is unassigned, or j in 1..nY to assign it to estimate
/// trajectory j-1. Nonzero entries are distinct.
using AssignmentVector = std::vector<std::size_t>;

/// (nX+1) x (nY+1) assignment matrix. The last row and column stand for
/// "unassigned"; the bottom-right corner is always 0.
class AssignmentMatrix {
 public:
  AssignmentMatrix(std::size_t num_truth, std::size_t num_estimate);

  /// Binary matrix of an assignment vector.
  static AssignmentMatrix from_vector(const AssignmentVector& pi, std::size_t num_estimate);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

/// Costs attributed to one time step. `switch_cost` is the cost of the
/// transition from step k-1 into step k (0 at k = 1).
struct StepReport {
  int k = 0;
  double localisation = 0.0;
  double missed = 0.0;
  double false_cost = 0.0;
  double switch_cost = 0.0;
};

enum class Solver { exact, lp };

struct TgospaResult {
  MetricReport report;
  std::vector<StepReport> per_step;
  /// Optimal assignment vectors (exact solver only).
  std::vector<AssignmentVector> vectors;
  /// Assignment matrices per step; binary for the exact solver, relaxed for LP.
  std::vector<AssignmentMatrix> matrices;
};

struct ExactOptions {
  /// Upper bound on the number of assignment vectors per independent
  /// sub-problem.
  std::size_t max_states = 50'000;
};

struct StepCost {
  double localisation = 0.0;
  double missed = 0.0;
  double false_cost = 0.0;

  double total() const noexcept { return localisation + missed + false_cost; }
};

/// Per-step cost (p-th power) of assignment vector `pi` at time step k.
/// A pair counts as a detection only if both trajectories are present and
/// their base distance is strictly below c. Throws InputError on an invalid
/// vector and RangeError when k is outside the window.
StepCost step_cost(const TrajectorySet& X, const TrajectorySet& Y, const AssignmentVector& pi, int k,
                   const GospaParams& params, const BaseDistance& base);

/// gamma^p * sum_i s(pi_i, next_i) with s = 0 (equal), 1 (two different
/// nonzeros) or 1/2 (exactly one side zero).
double switch_cost(const AssignmentVector& pi, const AssignmentVector& next, double gamma, double p);

/// Number of assignment vectors for nX truths and nY estimates:
/// sum_m C(nX,m) C(nY,m) m!, saturating at SIZE_MAX.
std::size_t assignment_space_size(std::size_t num_truth, std::size_t num_estimate);

/// Cost matrix D^k: entry (i,j) is the small-set q-metric (p-th power) of the
/// step-k slices, with row nX / column nY standing for the empty set.
AssignmentMatrix step_cost_matrix(const TrajectorySet& X, const TrajectorySet& Y, int k,
                                  const GospaParams& params, const BaseDistance& base);

/// Exact T-GOSPA q-metric by dynamic programming over time. Throws SizeError
/// when a sub-problem has more than `options.max_states` assignment vectors.
TgospaResult tgospa_exact(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& params,
                          const BaseDistance& base, const ExactOptions& options = {});

/// Exact T-GOSPA reports for every prefix window [1, k], k = 1..T, from a
/// single forward pass. Entry k-1 equals tgospa_exact on truncate(X, k),
/// truncate(Y, k).
std::vector<MetricReport> tgospa_exact_prefixes(const TrajectorySet& X, const TrajectorySet& Y,
                                                const TgospaParams& params, const BaseDistance& base,
                                                const ExactOptions& options = {});

/// LP relaxation of the T-GOSPA q-metric. A lower bound on tgospa_exact and
/// equal to it when the LP optimum is integral.
TgospaResult tgospa_lp(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& params,
                       const BaseDistance& base, const lp::Options& options = {});

TgospaResult tgospa(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& params,
                    const BaseDistance& base, Solver solver);

/// Splits the objective of feasible assignment matrices into localisation,
/// missed, false and switch costs. Throws InputError if W is infeasible.
MetricReport decompose(const TrajectorySet& X, const TrajectorySet& Y, std::span<const AssignmentMatrix> W,
                       const TgospaParams& params, const BaseDistance& base,
                       std::vector<StepReport>* per_step = nullptr);

/// One solve, re-priced for every rho in `rhos`.
std::vector<TgospaResult> tgospa_sweep(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& params,
                                       std::span<const double> rhos, const BaseDistance& base, Solver solver);

/// [ (d(X,Y)^p + d(Y,X)^p) / 2 ]^(1/p) at the given rho; equals the rho = 1/2
/// T-GOSPA metric. Throws ContractError for an asymmetric base.
double tgospa_symmetrise(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& params,
                         const BaseDistance& base, Solver solver);

}  // namespace qmetric
