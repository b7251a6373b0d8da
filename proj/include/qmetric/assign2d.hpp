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
#include <utility>
#include <vector>

namespace qmetric {

/// Dense row-major cost matrix with finite, nonnegative entries.
class CostMatrix {
 public:
  CostMatrix(std::size_t rows, std::size_t cols);
  /// Throws InputError if `values` has the wrong size or holds a negative or
  /// non-finite entry.
  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  /// Sets one entry; throws InputError on a negative or non-finite value.
  void set(std::size_t r, std::size_t c, double value);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

/// Full matching of the smaller side. Pairs are (row, col), sorted by row.
struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double objective = 0.0;
};

/// Minimum-cost rectangular assignment by shortest augmenting paths with
/// dual potentials, O(min^2 * max). Scans run in increasing index order with
/// strict comparisons, so equal inputs give identical matchings.
Matching solve_lap(const CostMatrix& cost);

/// Exhaustive minimum over all injections of the smaller index set into the
/// larger one. Test oracle; throws SizeError when min(rows, cols) > 8.
Matching brute_force_lap(const CostMatrix& cost);

}  // namespace qmetric
