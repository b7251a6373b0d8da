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

#include "qmetric/assign2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qmetric/errors.hpp"

namespace qmetric {

namespace {

void check_entry(double v) {
  if (!std::isfinite(v)) throw InputError("cost matrix entry is not finite");
  if (v < 0.0) throw InputError("cost matrix entry is negative");
}

double objective_of(const CostMatrix& cost, const Matching& m) {
  double s = 0.0;
  for (const auto& [r, c] : m.pairs) s += cost(r, c);
  return s;
}

// rows <= cols; returns col index for every row.
std::vector<std::size_t> hungarian(std::size_t n, std::size_t m, const auto& a) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 == 0) throw InternalError("solve_lap: no augmenting column found");
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col_of(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) col_of[p[j] - 1] = j - 1;
  }
  return col_of;
}

}  // namespace

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) throw InputError("cost matrix: value count does not match shape");
  for (double v : values_) check_entry(v);
}

void CostMatrix::set(std::size_t r, std::size_t c, double value) {
  check_entry(value);
  values_[r * cols_ + c] = value;
}

Matching solve_lap(const CostMatrix& cost) {
  Matching out;
  const std::size_t m = cost.rows();
  const std::size_t n = cost.cols();
  if (m == 0 || n == 0) return out;
  if (m <= n) {
    const auto col_of = hungarian(m, n, [&](std::size_t r, std::size_t c) { return cost(r, c); });
    for (std::size_t r = 0; r < m; ++r) out.pairs.emplace_back(r, col_of[r]);
  } else {
    const auto row_of = hungarian(n, m, [&](std::size_t r, std::size_t c) { return cost(c, r); });
    for (std::size_t c = 0; c < n; ++c) out.pairs.emplace_back(row_of[c], c);
    std::sort(out.pairs.begin(), out.pairs.end());
  }
  out.objective = objective_of(cost, out);
  return out;
}

Matching brute_force_lap(const CostMatrix& cost) {
  const std::size_t m = cost.rows();
  const std::size_t n = cost.cols();
  const std::size_t small = std::min(m, n);
  if (small > 8) throw SizeError("brute_force_lap: min(rows, cols) must be <= 8");
  Matching best;
  if (small == 0) return best;
  const bool by_rows = m <= n;
  const std::size_t large = by_rows ? n : m;

  // Enumerate injections small -> large via a depth-first search.
  std::vector<std::size_t> image(small, 0);
  std::vector<char> taken(large, 0);
  double best_obj = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_image;
  auto entry = [&](std::size_t s, std::size_t l) { return by_rows ? cost(s, l) : cost(l, s); };
  auto recurse = [&](auto&& self, std::size_t depth, double acc) -> void {
    if (depth == small) {
      if (acc < best_obj) {
        best_obj = acc;
        best_image = image;
      }
      return;
    }
    for (std::size_t l = 0; l < large; ++l) {
      if (taken[l]) continue;
      taken[l] = 1;
      image[depth] = l;
      self(self, depth + 1, acc + entry(depth, l));
      taken[l] = 0;
    }
  };
  recurse(recurse, 0, 0.0);
  for (std::size_t s = 0; s < small; ++s) {
    if (by_rows) {
      best.pairs.emplace_back(s, best_image[s]);
    } else {
      best.pairs.emplace_back(best_image[s], s);
    }
  }
  std::sort(best.pairs.begin(), best.pairs.end());
  best.objective = objective_of(cost, best);
  return best;
}

}  // namespace qmetric
