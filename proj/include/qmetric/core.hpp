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
#include <initializer_list>
#include <span>
#include <vector>

namespace qmetric {

/// Point in the single-object space. Coordinates are finite reals; the
/// meaning of each component is up to the application.
class ObjectState {
 public:
  ObjectState() = default;
  explicit ObjectState(std::vector<double> coords);
  ObjectState(std::initializer_list<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const ObjectState&, const ObjectState&) = default;

 private:
  std::vector<double> coords_;
};

/// Finite set of object states. Element order carries no meaning for any
/// metric; indices are only used to report assignments.
class ObjectSet {
 public:
  ObjectSet() = default;
  explicit ObjectSet(std::vector<ObjectState> elements);

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  /// Common state dimension, 0 for the empty set.
  std::size_t dim() const noexcept { return elements_.empty() ? 0 : elements_.front().dim(); }
  const ObjectState& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<ObjectState>& elements() const noexcept { return elements_; }

  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  friend bool operator==(const ObjectSet&, const ObjectSet&) = default;

 private:
  std::vector<ObjectState> elements_;
};

/// Trajectory (start, x^{1:n}): contiguous states beginning at 1-based time
/// step `start`.
class Trajectory {
 public:
  Trajectory(int start, std::vector<ObjectState> states);

  int start() const noexcept { return start_; }
  /// Last time step with a state.
  int last() const noexcept { return start_ + static_cast<int>(states_.size()) - 1; }
  std::size_t duration() const noexcept { return states_.size(); }
  std::size_t dim() const noexcept { return states_.front().dim(); }
  bool present(int k) const noexcept { return k >= start_ && k <= last(); }
  /// State at time step k; requires present(k).
  const ObjectState& at(int k) const { return states_[static_cast<std::size_t>(k - start_)]; }
  const std::vector<ObjectState>& states() const noexcept { return states_; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  int start_;
  std::vector<ObjectState> states_;
};

/// Set of trajectories living in the window [1, T].
class TrajectorySet {
 public:
  /// Throws InputError if a trajectory leaves the window and ShapeError on
  /// mixed state dimensions.
  TrajectorySet(int window, std::vector<Trajectory> trajectories);

  int window() const noexcept { return window_; }
  std::size_t size() const noexcept { return trajectories_.size(); }
  bool empty() const noexcept { return trajectories_.empty(); }
  std::size_t dim() const noexcept { return trajectories_.empty() ? 0 : trajectories_.front().dim(); }
  const Trajectory& operator[](std::size_t i) const { return trajectories_[i]; }
  const std::vector<Trajectory>& trajectories() const noexcept { return trajectories_; }

  /// n^k: number of trajectories present at step k.
  std::size_t count_at(int k) const;
  /// Sum of trajectory durations.
  std::size_t total_states() const;

  auto begin() const noexcept { return trajectories_.begin(); }
  auto end() const noexcept { return trajectories_.end(); }

  friend bool operator==(const TrajectorySet&, const TrajectorySet&) = default;

 private:
  int window_;
  std::vector<Trajectory> trajectories_;
};

/// Per-trajectory view of one time step.
struct Slice {
  /// One set per trajectory, each empty or a singleton.
  std::vector<ObjectSet> sets;
  /// Number of non-empty sets.
  std::size_t present = 0;
};

/// Cuts every trajectory at time step k. Throws RangeError outside [1, T].
Slice slice(const TrajectorySet& set, int k);

/// Object set present at step k (the union of the slice).
ObjectSet objects_at(const TrajectorySet& set, int k);

/// Clips every trajectory to [1, k]; trajectories born after k are dropped.
TrajectorySet truncate(const TrajectorySet& set, int k);

/// Keeps only the listed state components, in the given order.
TrajectorySet project(const TrajectorySet& set, std::span<const std::size_t> components);

struct GospaParams {
  double c = 1.0;
  double p = 1.0;
  double rho = 0.5;

  /// Throws ParameterError unless c > 0, 1 <= p < inf and 0 < rho < 1.
  void validate() const;
  /// c^p
  double cp() const;
};

struct TgospaParams {
  GospaParams gospa;
  double gamma = 1.0;

  void validate() const;
};

/// Metric value and its decomposition. Components are p-th-power costs and
/// add up to total_pth_power.
struct MetricReport {
  double total = 0.0;
  double total_pth_power = 0.0;
  double localisation = 0.0;
  double missed = 0.0;
  double false_cost = 0.0;
  double switch_cost = 0.0;

  /// Builds a report from components, clamping round-off negatives to zero.
  static MetricReport from_components(double p, double localisation, double missed,
                                      double false_cost, double switch_cost);
};

/// Re-prices a report computed at from.rho for rho_to. The optimal assignment
/// does not depend on rho, so only the missed and false parts change.
/// from.rho must lie strictly inside (0, 1).
MetricReport reprice(const MetricReport& report, const GospaParams& from, double rho_to);

/// Power with the d == 0 and p == 1 cases exact.
double pow_p(double d, double p);

/// Pairwise (cascade) summation; result independent of thread scheduling.
double pairwise_sum(std::span<const double> values);

}  // namespace qmetric
