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

#include "qmetric/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmetric/errors.hpp"

namespace qmetric {

ObjectState::ObjectState(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw ShapeError("object state needs at least one coordinate");
  for (double v : coords_) {
    if (!std::isfinite(v)) throw InputError("object state has a non-finite coordinate");
  }
}

ObjectState::ObjectState(std::initializer_list<double> coords)
    : ObjectState(std::vector<double>(coords)) {}

ObjectSet::ObjectSet(std::vector<ObjectState> elements) : elements_(std::move(elements)) {
  for (const auto& e : elements_) {
    if (e.dim() != elements_.front().dim()) throw ShapeError("object set mixes state dimensions");
  }
}

Trajectory::Trajectory(int start, std::vector<ObjectState> states)
    : start_(start), states_(std::move(states)) {
  if (start_ < 1) throw InputError("trajectory start must be >= 1");
  if (states_.empty()) throw InputError("trajectory needs at least one state");
  for (const auto& s : states_) {
    if (s.dim() != states_.front().dim()) throw ShapeError("trajectory mixes state dimensions");
  }
}

TrajectorySet::TrajectorySet(int window, std::vector<Trajectory> trajectories)
    : window_(window), trajectories_(std::move(trajectories)) {
  if (window_ < 1) throw InputError("window length T must be >= 1");
  for (std::size_t i = 0; i < trajectories_.size(); ++i) {
    const auto& t = trajectories_[i];
    if (t.last() > window_) {
      throw InputError("trajectory " + std::to_string(i) + " ends at step " +
                       std::to_string(t.last()) + " beyond window T=" + std::to_string(window_));
    }
    if (t.dim() != trajectories_.front().dim()) {
      throw ShapeError("trajectory set mixes state dimensions");
    }
  }
}

std::size_t TrajectorySet::count_at(int k) const {
  std::size_t n = 0;
  for (const auto& t : trajectories_) n += t.present(k) ? 1 : 0;
  return n;
}

std::size_t TrajectorySet::total_states() const {
  std::size_t n = 0;
  for (const auto& t : trajectories_) n += t.duration();
  return n;
}

Slice slice(const TrajectorySet& set, int k) {
  if (k < 1 || k > set.window()) {
    throw RangeError("time step " + std::to_string(k) + " outside window [1, " +
                     std::to_string(set.window()) + "]");
  }
  Slice out;
  out.sets.reserve(set.size());
  for (const auto& t : set) {
    if (t.present(k)) {
      out.sets.emplace_back(std::vector<ObjectState>{t.at(k)});
      ++out.present;
    } else {
      out.sets.emplace_back();
    }
  }
  return out;
}

ObjectSet objects_at(const TrajectorySet& set, int k) {
  if (k < 1 || k > set.window()) throw RangeError("time step outside window");
  std::vector<ObjectState> states;
  for (const auto& t : set) {
    if (t.present(k)) states.push_back(t.at(k));
  }
  return ObjectSet(std::move(states));
}

TrajectorySet truncate(const TrajectorySet& set, int k) {
  if (k < 1 || k > set.window()) throw RangeError("truncation step outside window");
  std::vector<Trajectory> out;
  for (const auto& t : set) {
    if (t.start() > k) continue;
    const auto keep = static_cast<std::size_t>(std::min(t.last(), k) - t.start() + 1);
    out.emplace_back(t.start(), std::vector<ObjectState>(t.states().begin(),
                                                         t.states().begin() + static_cast<std::ptrdiff_t>(keep)));
  }
  return TrajectorySet(k, std::move(out));
}

TrajectorySet project(const TrajectorySet& set, std::span<const std::size_t> components) {
  if (components.empty()) throw ShapeError("projection needs at least one component");
  std::vector<Trajectory> out;
  out.reserve(set.size());
  for (const auto& t : set) {
    std::vector<ObjectState> states;
    states.reserve(t.duration());
    for (const auto& s : t.states()) {
      std::vector<double> coords;
      coords.reserve(components.size());
      for (std::size_t c : components) {
        if (c >= s.dim()) throw ShapeError("projection component out of range");
        coords.push_back(s[c]);
      }
      states.emplace_back(std::move(coords));
    }
    out.emplace_back(t.start(), std::move(states));
  }
  return TrajectorySet(set.window(), std::move(out));
}

void GospaParams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("c must be a finite value > 0");
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("p must satisfy 1 <= p < inf");
  if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("rho must lie in the open interval (0, 1)");
}

double GospaParams::cp() const { return pow_p(c, p); }

void TgospaParams::validate() const {
  gospa.validate();
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be a finite value > 0");
}

namespace {
double clamp_round_off(double v) {
  // Components are sums of nonnegative terms; anything below zero is round-off.
  return v < 0.0 ? 0.0 : v;
}
}  // namespace

MetricReport MetricReport::from_components(double p, double localisation, double missed,
                                           double false_cost, double switch_cost) {
  MetricReport r;
  r.localisation = clamp_round_off(localisation);
  r.missed = clamp_round_off(missed);
  r.false_cost = clamp_round_off(false_cost);
  r.switch_cost = clamp_round_off(switch_cost);
  r.total_pth_power = r.localisation + r.missed + r.false_cost + r.switch_cost;
  r.total = p == 1.0 ? r.total_pth_power : std::pow(r.total_pth_power, 1.0 / p);
  return r;
}

MetricReport reprice(const MetricReport& report, const GospaParams& from, double rho_to) {
  GospaParams to = from;
  to.rho = rho_to;
  to.validate();
  if (!(from.rho > 0.0 && from.rho < 1.0)) throw ParameterError("reprice: source rho must lie in (0, 1)");
  const double missed = report.missed * (1.0 - rho_to) / (1.0 - from.rho);
  const double false_cost = report.false_cost * rho_to / from.rho;
  return MetricReport::from_components(from.p, report.localisation, missed, false_cost,
                                       report.switch_cost);
}

double pow_p(double d, double p) {
  if (d == 0.0) return 0.0;
  if (p == 1.0) return d;
  if (p == 2.0) return d * d;
  return std::pow(d, p);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace qmetric
