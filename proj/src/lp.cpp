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

#include "qmetric/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qmetric/errors.hpp"

namespace qmetric::lp {

LinearProgram::LinearProgram(std::size_t num_vars) : objective_(num_vars, 0.0) {}

std::size_t LinearProgram::add_var(double objective_coef) {
  objective_.push_back(objective_coef);
  return objective_.size() - 1;
}

void LinearProgram::set_objective(std::size_t var, double coef) {
  if (var >= objective_.size()) throw InputError("lp: objective variable out of range");
  objective_[var] = coef;
}

void LinearProgram::add_equality(std::vector<Term> terms, double rhs) {
  eq_.push_back({std::move(terms), rhs});
}

void LinearProgram::add_less_equal(std::vector<Term> terms, double rhs) {
  ub_.push_back({std::move(terms), rhs});
}

void LinearProgram::add_greater_equal(std::vector<Term> terms, double rhs) {
  for (auto& t : terms) t.coef = -t.coef;
  ub_.push_back({std::move(terms), -rhs});
}

void LinearProgram::validate() const {
  for (double c : objective_) {
    if (!std::isfinite(c)) throw InputError("lp: non-finite objective coefficient");
  }
  auto check = [&](const std::vector<Constraint>& rows) {
    for (const auto& row : rows) {
      if (!std::isfinite(row.rhs)) throw InputError("lp: non-finite right-hand side");
      for (const auto& t : row.terms) {
        if (t.var >= objective_.size()) throw InputError("lp: constraint variable out of range");
        if (!std::isfinite(t.coef)) throw InputError("lp: non-finite constraint coefficient");
      }
    }
  };
  check(eq_);
  check(ub_);
}

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

// Dense tableau: rows_ constraint rows followed by one reduced-cost row; the
// last column holds the right-hand side (and minus the objective value in the
// cost row).
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t width = cols_ + 1;
    double* prow = &a_[pr * width];
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < width; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    nonzero_.clear();
    for (std::size_t c = 0; c < width; ++c) {
      if (prow[c] != 0.0) nonzero_.push_back(c);
    }
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double* row = &a_[r * width];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c : nonzero_) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<std::size_t> nonzero_;
};

struct Simplex {
  Tableau& t;
  std::vector<std::size_t>& basis;
  const std::vector<char>& can_enter;
  const Options& opt;
  std::size_t iterations = 0;

  // Returns optimal, unbounded or iteration_limit.
  Status run() {
    std::size_t degenerate_run = 0;
    while (true) {
      if (iterations >= opt.max_iterations) return Status::iteration_limit;
      const bool bland = degenerate_run >= opt.degenerate_limit;
      std::size_t enter = t.cols();
      double best = -opt.optimality_tol;
      for (std::size_t c = 0; c < t.cols(); ++c) {
        if (!can_enter[c]) continue;
        const double rc = t.cost(c);
        if (rc < best) {
          enter = c;
          if (bland) break;
          best = rc;
        }
      }
      if (enter == t.cols()) return Status::optimal;

      std::size_t leave = t.rows();
      double min_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < t.rows(); ++r) {
        const double a = t.at(r, enter);
        if (a <= opt.pivot_tol) continue;
        const double ratio = std::max(t.rhs(r), 0.0) / a;
        if (leave == t.rows()) {
          leave = r;
          min_ratio = ratio;
          continue;
        }
        // Near-equal ratios go to the lowest basic variable index.
        const double tie = 1e-12 * (1.0 + min_ratio);
        if (ratio < min_ratio - tie) {
          leave = r;
          min_ratio = ratio;
        } else if (ratio <= min_ratio + tie && basis[r] < basis[leave]) {
          leave = r;
          min_ratio = std::min(min_ratio, ratio);
        }
      }
      if (leave == t.rows()) return Status::unbounded;
      degenerate_run = min_ratio <= opt.feasibility_tol ? degenerate_run + 1 : 0;
      t.pivot(leave, enter);
      basis[leave] = enter;
      ++iterations;
    }
  }
};

}  // namespace

Solution solve(const LinearProgram& program, const Options& options) {
  program.validate();
  const std::size_t n = program.num_vars();
  const auto& eq = program.equalities();
  const auto& ub = program.inequalities();
  const std::size_t m = eq.size() + ub.size();

  // Row layout: equalities then inequalities. Every inequality gets a slack;
  // a row gets an artificial unless its slack can start in the basis.
  std::vector<const Constraint*> rows;
  rows.reserve(m);
  for (const auto& r : eq) rows.push_back(&r);
  for (const auto& r : ub) rows.push_back(&r);

  std::vector<double> sign(m, 1.0);
  std::vector<char> needs_artificial(m, 0);
  for (std::size_t r = 0; r < m; ++r) {
    const bool is_ub = r >= eq.size();
    if (rows[r]->rhs < 0.0) sign[r] = -1.0;
    needs_artificial[r] = !is_ub || sign[r] < 0.0;
  }
  const std::size_t num_slack = ub.size();
  const auto num_art = static_cast<std::size_t>(std::count(needs_artificial.begin(), needs_artificial.end(), 1));
  const std::size_t slack0 = n;
  const std::size_t art0 = n + num_slack;
  const std::size_t cols = n + num_slack + num_art;

  Tableau t(m, cols);
  std::vector<std::size_t> basis(m, 0);
  std::size_t next_art = art0;
  for (std::size_t r = 0; r < m; ++r) {
    for (const auto& term : rows[r]->terms) t.at(r, term.var) += sign[r] * term.coef;
    t.rhs(r) = sign[r] * rows[r]->rhs;
    if (r >= eq.size()) t.at(r, slack0 + (r - eq.size())) = sign[r];
    if (needs_artificial[r]) {
      t.at(r, next_art) = 1.0;
      basis[r] = next_art++;
    } else {
      basis[r] = slack0 + (r - eq.size());
    }
  }

  Solution sol;
  std::vector<char> can_enter(cols, 1);

  // Phase 1: minimise the sum of artificials.
  if (num_art > 0) {
    for (std::size_t r = 0; r < m; ++r) {
      if (!needs_artificial[r]) continue;
      for (std::size_t c = 0; c <= cols; ++c) {
        if (c < art0 || c >= cols) t.at(m, c) -= t.at(r, c);
      }
    }
    Simplex phase1{t, basis, can_enter, options};
    const Status s = phase1.run();
    sol.iterations += phase1.iterations;
    if (s == Status::iteration_limit) {
      sol.status = s;
      return sol;
    }
    if (-t.rhs(m) > options.feasibility_tol * (1.0 + static_cast<double>(m))) {
      sol.status = Status::infeasible;
      return sol;
    }
    // Drive zero-level artificials out of the basis where possible; rows where
    // that fails are redundant and keep the artificial at zero.
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] < art0) continue;
      std::size_t best = cols;
      double best_abs = options.pivot_tol;
      for (std::size_t c = 0; c < art0; ++c) {
        const double a = std::abs(t.at(r, c));
        if (a > best_abs) {
          best_abs = a;
          best = c;
        }
      }
      if (best != cols) {
        t.pivot(r, best);
        basis[r] = best;
      }
    }
    for (std::size_t c = art0; c < cols; ++c) can_enter[c] = 0;
  }

  // Phase 2 cost row.
  const auto& obj = program.objective();
  for (std::size_t c = 0; c <= cols; ++c) t.at(m, c) = c < n ? obj[c] : 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = basis[r];
    const double cb = b < n ? obj[b] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= cols; ++c) t.at(m, c) -= cb * t.at(r, c);
  }
  Simplex phase2{t, basis, can_enter, options};
  const Status s = phase2.run();
  sol.iterations += phase2.iterations;
  sol.status = s;
  if (s != Status::optimal) return sol;

  sol.values.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) sol.values[basis[r]] = std::max(t.rhs(r), 0.0);
  }
  double objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) objective += obj[j] * sol.values[j];
  sol.objective = objective;

  double residual = 0.0;
  auto row_value = [&](const Constraint& row) {
    double v = 0.0;
    for (const auto& term : row.terms) v += term.coef * sol.values[term.var];
    return v;
  };
  for (const auto& row : eq) residual = std::max(residual, std::abs(row_value(row) - row.rhs));
  for (const auto& row : ub) residual = std::max(residual, row_value(row) - row.rhs);
  sol.max_residual = residual;
  return sol;
}

}  // namespace qmetric::lp
