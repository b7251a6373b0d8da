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

// Shared tables for the T-GOSPA solvers.
//
// Both solvers work on a reduced problem. A pair (i, j) that is never
// detection-eligible has a zero reduced stage coefficient at every step, so
// moving its assignment mass to the "unassigned" row/column leaves the stage
// cost unchanged and can only remove switch terms. Dropping those pairs
// splits truths and estimates into independent connected components.

#include <cstddef>
#include <utility>
#include <vector>

#include "qmetric/basedist.hpp"
#include "qmetric/core.hpp"
#include "qmetric/tgospa.hpp"

namespace qmetric::detail {

struct Component {
  std::vector<std::size_t> truths;
  std::vector<std::size_t> estimates;
  /// Relevant (truth, estimate) pairs, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

class Problem {
 public:
  Problem(const TrajectorySet& X, const TrajectorySet& Y, const GospaParams& params, const BaseDistance& base);

  int window() const noexcept { return window_; }
  std::size_t num_truth() const noexcept { return nx_; }
  std::size_t num_estimate() const noexcept { return ny_; }
  const GospaParams& params() const noexcept { return params_; }
  double cp() const noexcept { return cp_; }

  // t is a 0-based step index.
  bool x_present(int t, std::size_t i) const { return x_present_[idx_x(t, i)] != 0; }
  bool y_present(int t, std::size_t j) const { return y_present_[idx_y(t, j)] != 0; }
  std::size_t nx_at(int t) const { return nx_at_[static_cast<std::size_t>(t)]; }
  std::size_t ny_at(int t) const { return ny_at_[static_cast<std::size_t>(t)]; }
  /// min(d_b, c)^p when both present, 0 otherwise.
  double loc(int t, std::size_t i, std::size_t j) const { return loc_[idx_xy(t, i, j)]; }
  bool eligible(int t, std::size_t i, std::size_t j) const { return eligible_[idx_xy(t, i, j)] != 0; }
  /// Stage-cost change from assigning i to j instead of leaving both unassigned.
  double coef(int t, std::size_t i, std::size_t j) const {
    return eligible(t, i, j) ? loc(t, i, j) - cp_ : 0.0;
  }
  /// Stage cost with nobody assigned: (1-rho) c^p n_X^k + rho c^p n_Y^k.
  double unassigned_cost(int t) const {
    return (1.0 - params_.rho) * cp_ * static_cast<double>(nx_at(t)) +
           params_.rho * cp_ * static_cast<double>(ny_at(t));
  }
  /// True if (i, j) is eligible at some step.
  bool relevant(std::size_t i, std::size_t j) const { return relevant_[i * ny_ + j] != 0; }

  /// Connected components of the relevant-pair graph. Truths and estimates
  /// without any relevant pair are not part of any component.
  std::vector<Component> components() const;

  /// Per-step costs of a full assignment-vector sequence over steps
  /// [0, seq.size()).
  std::vector<StepReport> evaluate(const std::vector<AssignmentVector>& seq, double gamma) const;

 private:
  std::size_t idx_x(int t, std::size_t i) const { return static_cast<std::size_t>(t) * nx_ + i; }
  std::size_t idx_y(int t, std::size_t j) const { return static_cast<std::size_t>(t) * ny_ + j; }
  std::size_t idx_xy(int t, std::size_t i, std::size_t j) const {
    return (static_cast<std::size_t>(t) * nx_ + i) * ny_ + j;
  }

  int window_;
  std::size_t nx_;
  std::size_t ny_;
  GospaParams params_;
  double cp_;
  std::vector<char> x_present_;
  std::vector<char> y_present_;
  std::vector<std::size_t> nx_at_;
  std::vector<std::size_t> ny_at_;
  std::vector<double> loc_;
  std::vector<char> eligible_;
  std::vector<char> relevant_;
};

/// Checks shared preconditions of the T-GOSPA entry points.
void check_inputs(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& params);

/// Sums per-step reports into a MetricReport.
MetricReport summarise(const std::vector<StepReport>& steps, double p);

}  // namespace qmetric::detail
