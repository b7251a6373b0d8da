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
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "qmetric/errors.hpp"
#include "qmetric/tgospa.hpp"
#include "tgospa_problem.hpp"

namespace qmetric {

namespace {

using detail::Component;
using detail::Problem;

// Assignment vectors of one component, restricted to relevant pairs, in
// lexicographic order. Entry values are 0 or global estimate index + 1.
struct StateSpace {
  std::size_t width = 0;
  std::vector<std::uint32_t> entries;

  std::size_t size() const { return width == 0 ? 1 : entries.size() / width; }
  const std::uint32_t* state(std::size_t s) const { return entries.data() + s * width; }
};

StateSpace enumerate_states(const Problem& prob, const Component& comp, std::size_t max_states) {
  StateSpace space;
  space.width = comp.truths.size();
  std::vector<std::vector<std::uint32_t>> options(space.width);
  for (std::size_t a = 0; a < space.width; ++a) {
    options[a].push_back(0);
    for (std::size_t j : comp.estimates) {
      if (prob.relevant(comp.truths[a], j)) options[a].push_back(static_cast<std::uint32_t>(j + 1));
    }
  }
  std::vector<char> used(prob.num_estimate(), 0);
  std::vector<std::uint32_t> current(space.width, 0);
  std::size_t count = 0;
  auto recurse = [&](auto&& self, std::size_t a) -> void {
    if (a == space.width) {
      if (++count > max_states) {
        throw SizeError("tgospa_exact: more than " + std::to_string(max_states) +
                        " assignment vectors in one sub-problem; use the LP solver");
      }
      space.entries.insert(space.entries.end(), current.begin(), current.end());
      return;
    }
    for (std::uint32_t v : options[a]) {
      if (v != 0 && used[v - 1]) continue;
      if (v != 0) used[v - 1] = 1;
      current[a] = v;
      self(self, a + 1);
      if (v != 0) used[v - 1] = 0;
    }
  };
  recurse(recurse, 0);
  return space;
}

// Forward dynamic program over steps for one component. value[s] holds the
// best cost of steps [0, t] ending in state s, excluding the cost of leaving
// everything unassigned (added globally).
struct DpRun {
  std::size_t states = 0;
  int steps = 0;
  std::vector<std::uint32_t> back;      // steps x states
  std::vector<double> best_value;       // per step
  std::vector<std::uint32_t> best_state;  // per step
};

DpRun run_dp(const Problem& prob, const Component& comp, const StateSpace& space, double gamma) {
  const std::size_t S = space.size();
  const std::size_t width = space.width;
  const int T = prob.window();
  const double half_gp = 0.5 * pow_p(gamma, prob.params().p);

  DpRun run;
  run.states = S;
  run.steps = T;
  run.back.assign(static_cast<std::size_t>(T) * S, 0);
  run.best_value.assign(static_cast<std::size_t>(T), 0.0);
  run.best_state.assign(static_cast<std::size_t>(T), 0);

  auto stage = [&](int t, std::size_t s) {
    const std::uint32_t* st = space.state(s);
    double v = 0.0;
    for (std::size_t a = 0; a < width; ++a) {
      if (st[a] != 0) v += prob.coef(t, comp.truths[a], st[a] - 1);
    }
    return v;
  };
  auto halves = [&](std::size_t s, std::size_t r) {
    const std::uint32_t* x = space.state(s);
    const std::uint32_t* y = space.state(r);
    unsigned h = 0;
    for (std::size_t a = 0; a < width; ++a) {
      if (x[a] != y[a]) h += (x[a] != 0 && y[a] != 0) ? 2u : 1u;
    }
    return h;
  };
  auto record_best = [&](int t, const std::vector<double>& value) {
    std::size_t arg = 0;
    for (std::size_t s = 1; s < S; ++s) {
      if (value[s] < value[arg]) arg = s;
    }
    run.best_value[static_cast<std::size_t>(t)] = value[arg];
    run.best_state[static_cast<std::size_t>(t)] = static_cast<std::uint32_t>(arg);
  };

  std::vector<double> value(S), next(S);
  for (std::size_t s = 0; s < S; ++s) value[s] = stage(0, s);
  record_best(0, value);

  std::vector<std::uint32_t> order(S);
  for (int t = 1; t < T; ++t) {
    // Visiting predecessors in increasing value lets the scan stop once the
    // predecessor value alone exceeds the best total; switch costs are >= 0.
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return value[a] < value[b]; });
    std::uint32_t* back = run.back.data() + static_cast<std::size_t>(t) * S;
    for (std::size_t r = 0; r < S; ++r) {
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t arg = 0;
      for (std::uint32_t s : order) {
        if (value[s] > best) break;
        const double cost = value[s] + half_gp * static_cast<double>(halves(s, r));
        if (cost < best || (cost == best && s < arg)) {
          best = cost;
          arg = s;
        }
      }
      back[r] = arg;
      next[r] = best + stage(t, r);
    }
    value.swap(next);
    record_best(t, value);
  }
  return run;
}

// State index per step [0, last] of the optimal path ending at step `last`.
std::vector<std::uint32_t> backtrack(const DpRun& run, int last) {
  std::vector<std::uint32_t> path(static_cast<std::size_t>(last) + 1);
  std::uint32_t s = run.best_state[static_cast<std::size_t>(last)];
  for (int t = last; t >= 0; --t) {
    path[static_cast<std::size_t>(t)] = s;
    if (t > 0) s = run.back[static_cast<std::size_t>(t) * run.states + s];
  }
  return path;
}

struct ComponentSolution {
  Component comp;
  StateSpace space;
  DpRun run;
};

std::vector<ComponentSolution> solve_components(const Problem& prob, double gamma, const ExactOptions& options) {
  std::vector<ComponentSolution> out;
  for (auto& comp : prob.components()) {
    ComponentSolution cs{std::move(comp), {}, {}};
    cs.space = enumerate_states(prob, cs.comp, options.max_states);
    cs.run = run_dp(prob, cs.comp, cs.space, gamma);
    out.push_back(std::move(cs));
  }
  return out;
}

// Full assignment vectors for steps [0, last] from each component's optimal
// path ending at `last`.
std::vector<AssignmentVector> assemble(const Problem& prob, const std::vector<ComponentSolution>& comps, int last) {
  std::vector<AssignmentVector> seq(static_cast<std::size_t>(last) + 1, AssignmentVector(prob.num_truth(), 0));
  for (const auto& cs : comps) {
    const auto path = backtrack(cs.run, last);
    for (int t = 0; t <= last; ++t) {
      const std::uint32_t* st = cs.space.state(path[static_cast<std::size_t>(t)]);
      for (std::size_t a = 0; a < cs.space.width; ++a) seq[static_cast<std::size_t>(t)][cs.comp.truths[a]] = st[a];
    }
  }
  return seq;
}

double dp_objective(const Problem& prob, const std::vector<ComponentSolution>& comps, int last) {
  double v = 0.0;
  for (int t = 0; t <= last; ++t) v += prob.unassigned_cost(t);
  for (const auto& cs : comps) v += cs.run.best_value[static_cast<std::size_t>(last)];
  return v;
}

void check_consistent(double dp_value, const MetricReport& r) {
  if (std::abs(dp_value - r.total_pth_power) > 1e-7 * (1.0 + std::abs(dp_value))) {
    throw InternalError("tgospa_exact: dynamic-programming value disagrees with the recomputed cost");
  }
}

}  // namespace

TgospaResult tgospa_exact(const TrajectorySet& X, const TrajectorySet& Y, const TgospaParams& params,
                          const BaseDistance& base, const ExactOptions& options) {
  detail::check_inputs(X, Y, params);
  const Problem prob(X, Y, params.gospa, base);
  const auto comps = solve_components(prob, params.gamma, options);
  const int last = prob.window() - 1;

  TgospaResult out;
  out.vectors = assemble(prob, comps, last);
  out.per_step = prob.evaluate(out.vectors, params.gamma);
  out.report = detail::summarise(out.per_step, params.gospa.p);
  check_consistent(dp_objective(prob, comps, last), out.report);
  out.matrices.reserve(out.vectors.size());
  for (const auto& v : out.vectors) out.matrices.push_back(AssignmentMatrix::from_vector(v, Y.size()));
  return out;
}

std::vector<MetricReport> tgospa_exact_prefixes(const TrajectorySet& X, const TrajectorySet& Y,
                                                const TgospaParams& params, const BaseDistance& base,
                                                const ExactOptions& options) {
  detail::check_inputs(X, Y, params);
  const Problem prob(X, Y, params.gospa, base);
  const auto comps = solve_components(prob, params.gamma, options);
  std::vector<MetricReport> out;
  out.reserve(static_cast<std::size_t>(prob.window()));
  for (int last = 0; last < prob.window(); ++last) {
    const auto seq = assemble(prob, comps, last);
    MetricReport r = detail::summarise(prob.evaluate(seq, params.gamma), params.gospa.p);
    check_consistent(dp_objective(prob, comps, last), r);
    out.push_back(r);
  }
  return out;
}

}  // namespace qmetric
