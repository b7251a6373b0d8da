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

#include "qmetric/gospa.hpp"

#include <algorithm>
#include <cmath>

#include "qmetric/assign2d.hpp"
#include "qmetric/errors.hpp"

namespace qmetric {

namespace {

void check_dims(const ObjectSet& x, const ObjectSet& y) {
  if (!x.empty() && !y.empty() && x.dim() != y.dim()) {
    throw ShapeError("gospa: truth and estimate states differ in dimension");
  }
}

void require_symmetric(const BaseDistance& base, const char* what) {
  if (!base.is_symmetric()) {
    throw ContractError(std::string(what) + " requires a symmetric base distance, got " + base.name());
  }
}

}  // namespace

GospaResult gospa(const ObjectSet& x, const ObjectSet& y, const GospaParams& params,
                  const BaseDistance& base) {
  params.validate();
  check_dims(x, y);
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  const double c = params.c;
  const double cp = params.cp();

  std::vector<double> raw(nx * ny);
  CostMatrix cost(nx, ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const double d = base(x[i], y[j]);
      raw[i * ny + j] = d;
      cost.set(i, j, pow_p(std::min(d, c), params.p));
    }
  }
  const Matching matching = solve_lap(cost);

  GospaResult out;
  std::vector<char> truth_used(nx, 0), est_used(ny, 0);
  double localisation = 0.0;
  for (const auto& [i, j] : matching.pairs) {
    // Strict detection rule: d_b == c is not a detection.
    if (raw[i * ny + j] < c) {
      out.assignment.emplace_back(i, j);
      truth_used[i] = 1;
      est_used[j] = 1;
      localisation += cost(i, j);
    }
  }
  for (std::size_t i = 0; i < nx; ++i) {
    if (!truth_used[i]) out.unassigned_truth.push_back(i);
  }
  for (std::size_t j = 0; j < ny; ++j) {
    if (!est_used[j]) out.unassigned_estimate.push_back(j);
  }
  const double missed = (1.0 - params.rho) * cp * static_cast<double>(out.unassigned_truth.size());
  const double false_cost = params.rho * cp * static_cast<double>(out.unassigned_estimate.size());
  out.report = MetricReport::from_components(params.p, localisation, missed, false_cost, 0.0);
  return out;
}

GospaResult gospa_metric(const ObjectSet& x, const ObjectSet& y, double c, double p,
                         const BaseDistance& base) {
  require_symmetric(base, "gospa_metric");
  return gospa(x, y, GospaParams{c, p, 0.5}, base);
}

std::vector<GospaResult> gospa_sweep(const ObjectSet& x, const ObjectSet& y, const GospaParams& params,
                                     std::span<const double> rhos, const BaseDistance& base) {
  GospaParams half = params;
  half.rho = 0.5;
  const GospaResult first = gospa(x, y, half, base);
  std::vector<GospaResult> out;
  out.reserve(rhos.size());
  for (double rho : rhos) {
    GospaResult r = first;
    r.report = reprice(first.report, half, rho);
    out.push_back(std::move(r));
  }
  return out;
}

double rho_from_ratio(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw ParameterError("rho_from_ratio: ratio must be > 0");
  return ratio / (ratio + 1.0);
}

bool reversed_rho_identity_check(const ObjectSet& x, const ObjectSet& y, const GospaParams& params,
                                 const BaseDistance& base) {
  GospaParams reversed = params;
  reversed.rho = 1.0 - params.rho;
  const double forward = gospa(x, y, params, base).report.total;
  const double backward = gospa(y, x, reversed, base).report.total;
  return std::abs(forward - backward) <= 1e-9;
}

double symmetrise(const ObjectSet& x, const ObjectSet& y, const GospaParams& params,
                  const BaseDistance& base) {
  require_symmetric(base, "symmetrise");
  const double a = gospa(x, y, params, base).report.total_pth_power;
  const double b = gospa(y, x, params, base).report.total_pth_power;
  const double mean = 0.5 * (a + b);
  return params.p == 1.0 ? mean : std::pow(mean, 1.0 / params.p);
}

double small_set_cost(const ObjectState* x, const ObjectState* y, const GospaParams& params,
                      const BaseDistance& base) {
  if (x != nullptr && y != nullptr) return pow_p(std::min(base(*x, *y), params.c), params.p);
  if (x == nullptr && y != nullptr) return params.rho * params.cp();
  if (x != nullptr && y == nullptr) return (1.0 - params.rho) * params.cp();
  return 0.0;
}

}  // namespace qmetric
