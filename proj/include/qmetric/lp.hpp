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
#include <vector>

namespace qmetric::lp {

struct Term {
  std::size_t var;
  double coef;
};

struct Constraint {
  std::vector<Term> terms;
  double rhs = 0.0;
};

/// min c'x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0.
///
/// Constraint rows are stored sparsely; repeated variables within a row are
/// summed.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars);

  std::size_t num_vars() const noexcept { return objective_.size(); }
  /// Appends a variable with the given objective coefficient and returns its index.
  std::size_t add_var(double objective_coef = 0.0);
  void set_objective(std::size_t var, double coef);
  void add_equality(std::vector<Term> terms, double rhs);
  void add_less_equal(std::vector<Term> terms, double rhs);
  /// Stored as the negated <= row.
  void add_greater_equal(std::vector<Term> terms, double rhs);

  const std::vector<double>& objective() const noexcept { return objective_; }
  const std::vector<Constraint>& equalities() const noexcept { return eq_; }
  const std::vector<Constraint>& inequalities() const noexcept { return ub_; }

  /// Throws InputError on out-of-range variables or non-finite data.
  void validate() const;

 private:
  std::vector<double> objective_;
  std::vector<Constraint> eq_;
  std::vector<Constraint> ub_;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(Status s) noexcept;

struct Solution {
  Status status = Status::infeasible;
  std::vector<double> values;
  double objective = 0.0;
  std::size_t iterations = 0;
  /// Largest constraint violation of `values` (0 unless optimal).
  double max_residual = 0.0;
};

struct Options {
  /// Phase-1 objective and primal residual threshold.
  double feasibility_tol = 1e-8;
  /// Reduced costs above -optimality_tol count as nonnegative.
  double optimality_tol = 1e-9;
  /// Smallest magnitude accepted as a pivot element.
  double pivot_tol = 1e-10;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_limit = 50;
  std::size_t max_iterations = 1'000'000;
};

/// Two-phase dense-tableau primal simplex. Deterministic for a fixed
/// program; infeasible and unbounded programs are reported through `status`.
Solution solve(const LinearProgram& program, const Options& options = {});

}  // namespace qmetric::lp
