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

#include <algorithm>
#include <cmath>
#include <string>

#include "qmetric/errors.hpp"
#include "qmetric/tgospa.hpp"
#include "tgospa_problem.hpp"

namespace qmetric {

namespace {

using detail::Component;
using detail::Problem;

// Relaxed assignment weights of one component: values[t * pairs + q].
struct ComponentLp {
  std::vector<double> values;
  double objective = 0.0;
};

// Variables w[t][q] for the component's relevant pairs and e[t][q] >= |w[t][q] - w[t+1][q]|.
// The unassigned row and column are eliminated, so every constraint is a
// <= row with a nonnegative right-hand side and phase 1 is never needed.
ComponentLp solve_component(const Problem& prob, const Component& comp, double gamma, const lp::Options& options) {
  const int T = prob.window();
  const std::size_t P = comp.pairs.size();
  const std::size_t nw = static_cast<std::size_t>(T) * P;
  const double half_gp = 0.5 * pow_p(gamma, prob.params().p);
  auto w = [&](int t, std::size_t q) { return static_cast<std::size_t>(t) * P + q; };

  lp::LinearProgram program(nw);
  for (int t = 0; t < T; ++t) {
    for (std::size_t q = 0; q < P; ++q) {
      program.set_objective(w(t, q), prob.coef(t, comp.pairs[q].first, comp.pairs[q].second));
    }
  }
  for (int t = 0; t < T; ++t) {
    for (std::size_t i : comp.truths) {
      std::vector<lp::Term> row;
      for (std::size_t q = 0; q < P; ++q) {
        if (comp.pairs[q].first == i) row.push_back({w(t, q), 1.0});
      }
      program.add_less_equal(std::move(row), 1.0);
    }
    for (std::size_t j : comp.estimates) {
      std::vector<lp::Term> col;
      for (std::size_t q = 0; q < P; ++q) {
        if (comp.pairs[q].second == j) col.push_back({w(t, q), 1.0});
      }
      program.add_less_equal(std::move(col), 1.0);
    }
  }
  if (half_gp > 0.0) {
    for (int t = 0; t + 1 < T; ++t) {
      for (std::size_t q = 0; q < P; ++q) {
        const std::size_t e = program.add_var(half_gp);
        program.add_less_equal({{w(t, q), 1.0}, {w(t + 1, q), -1.0}, {e, -1.0}}, 0.0);
        program.add_less_equal({{w(t, q), -1.0}, {w(t + 1, q), 1.0}, {e, -1.0}}, 0.0);
      }
    }
  }

  const lp::Solution sol = lp::solve(program, options);
  if (sol.status != lp::Status::optimal) {
    throw InternalError(std::string("tgospa_lp: simplex finished with status ") + lp::to_string(sol.status));
  }
  ComponentLp out;
  out.values.assign(sol.values.begin(), sol.values.begin() + static_cast<std::ptrdiff_t>(nw));
  for (double& v : out.values) v = std::clamp(v, 0.0, 1.0);
  out.objective = sol.objective;
  return out;
}

}  // namespace

TgospaResult tgospa_lp(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& params,
                       const BaseDistance& base, const lp::Options& options) {
  detail::check_inputs(X, Y, params);
  const Problem prob(X, Y, params.gospa, base);
  const int T = prob.window();
  const std::size_t nx = X.size();
  const std::size_t ny = Y.size();

  std::vector<AssignmentMatrix> W(static_cast<std::size_t>(T), AssignmentMatrix(nx, ny));
  double lp_value = 0.0;
  for (int t = 0; t < T; ++t) lp_value += prob.unassigned_cost(t);
  for (const auto& comp : prob.components()) {
    const ComponentLp sol = solve_component(prob, comp, params.gamma, options);
    lp_value += sol.objective;
    const std::size_t P = comp.pairs.size();
    for (int t = 0; t < T; ++t) {
      for (std::size_t q = 0; q < P; ++q) {
        W[static_cast<std::size_t>(t)](comp.pairs[q].first, comp.pairs[q].second) =
            sol.values[static_cast<std::size_t>(t) * P + q];
      }
    }
  }
  for (auto& m : W) {
    for (std::size_t i = 0; i < nx; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < ny; ++j) s += m(i, j);
      m(i, ny) = std::max(0.0, 1.0 - s);
    }
    for (std::size_t j = 0; j < ny; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < nx; ++i) s += m(i, j);
      m(nx, j) = std::max(0.0, 1.0 - s);
    }
  }

  TgospaResult out;
  out.report = decompose(X, Y, W, params, base, &out.per_step);
  if (std::abs(out.report.total_pth_power - lp_value) > 1e-6 * (1.0 + std::abs(lp_value))) {
    throw InternalError("tgospa_lp: decomposed cost disagrees with the LP objective");
  }
  out.matrices = std::move(W);
  return out;
}

}  // namespace qmetric
