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
#include <utility>
#include <vector>

#include "qmetric/basedist.hpp"
#include "qmetric/core.hpp"

namespace qmetric {

/// GOSPA q-metric value with its optimal assignment set. Indices refer to
/// positions in the truth (x) and estimate (y) sets.
struct GospaResult {
  MetricReport report;
  /// Matched (truth, estimate) pairs, all with base distance < c.
  std::vector<std::pair<std::size_t, std::size_t>> assignment;
  std::vector<std::size_t> unassigned_truth;
  std::vector<std::size_t> unassigned_estimate;
};

/// GOSPA q-metric between truth x and estimate y.
///
/// Each false estimate costs rho c^p, each missed truth (1 - rho) c^p, and a
/// matched pair d_b(x_i, y_j)^p, always evaluated truth-first. The minimum is
/// found by solve_lap on min(d_b, c)^p; matched pairs with d_b >= c are then
/// reported as one missed plus one false object, which has the same cost.
GospaResult gospa(const ObjectSet& x, const ObjectSet& y, const GospaParams& params,
                  const BaseDistance& base);

/// GOSPA metric (rho = 1/2). Throws ContractError for an asymmetric base.
GospaResult gospa_metric(const ObjectSet& x, const ObjectSet& y, double c, double p,
                         const BaseDistance& base);

/// Evaluates several rho values with one assignment solve.
std::vector<GospaResult> gospa_sweep(const ObjectSet& x, const ObjectSet& y, const GospaParams& params,
                                     std::span<const double> rhos, const BaseDistance& base);

/// rho such that the false-object cost is `ratio` times the missed-object
/// cost: ratio / (ratio + 1).
double rho_from_ratio(double ratio);

/// |d^(c,rho)(x, y) - d^(c,1-rho)(y, x)| <= 1e-9.
bool reversed_rho_identity_check(const ObjectSet& x, const ObjectSet& y, const GospaParams& params,
                                 const BaseDistance& base);

/// [ (d^(c,rho)(x,y)^p + d^(c,rho)(y,x)^p) / 2 ]^(1/p); equals the GOSPA
/// metric for a symmetric base. Throws ContractError otherwise.
double symmetrise(const ObjectSet& x, const ObjectSet& y, const GospaParams& params,
                  const BaseDistance& base);

/// q-metric between sets of at most one element, p-th power:
/// min(d_b, c)^p, rho c^p, (1 - rho) c^p or 0. Null means the empty set.
double small_set_cost(const ObjectState* x, const ObjectState* y, const GospaParams& params,
                      const BaseDistance& base);

}  // namespace qmetric
