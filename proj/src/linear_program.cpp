// Copyright 2026 The lipproj Authors.
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

#include "lipproj/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lipproj/error.hpp"

namespace lipproj {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr int kDegenerateRunBeforeBland = 50;

// Tableau with rows 0..m-1 for constraints and the objective kept separately
// as reduced costs over all columns.
class Tableau {
 public:
  Tableau(Matrix t, Vector rhs, std::vector<int> basis)
      : original_(t), original_rhs_(rhs), t_(std::move(t)), rhs_(std::move(rhs)),
        basis_(std::move(basis)) {}

  // Rebuilds the tableau as B^{-1} [A | b] from the original data, discarding
  // the rounding error accumulated by the pivots.
  void Refactor() {
    const int m = static_cast<int>(t_.rows());
    if (m == 0) return;
    Matrix b(m, m);
    for (int i = 0; i < m; ++i) b.col(i) = original_.col(basis_[i]);
    const Eigen::PartialPivLU<Matrix> lu(b);
    t_ = lu.solve(original_);
    rhs_ = lu.solve(original_rhs_);
    for (int i = 0; i < m; ++i) {
      t_.col(basis_[i]).setZero();
      t_(i, basis_[i]) = 1.0;
      if (rhs_(i) < 0.0 && rhs_(i) > -kFeasTol) rhs_(i) = 0.0;
    }
  }

  // Minimises cost^T x over the current feasible basis. Columns flagged in
  // `blocked` never enter.
  LpStatus Optimize(const Vector& cost, const std::vector<bool>& blocked, int max_pivots,
                    int* pivots) {
    const int m = static_cast<int>(t_.rows());
    const int cols = static_cast<int>(t_.cols());
    int degenerate_run = 0;
    int since_refactor = 0;
    bool fresh = false;  // tableau rebuilt since the last pivot
    const int refactor_period = std::max(64, m);
    while (true) {
      if (*pivots >= max_pivots) return LpStatus::kIterationLimit;
      if (since_refactor >= refactor_period) {
        Refactor();
        since_refactor = 0;
        fresh = true;
      }
      // reduced costs r_j = cost_j - cost_B^T T_j
      Vector cb(m);
      for (int i = 0; i < m; ++i) cb(i) = cost(basis_[i]);
      const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
      int enter = -1;
      double best = -kFeasTol;
      for (int j = 0; j < cols; ++j) {
        if (blocked[j]) continue;
        const double r = cost(j) - cb.dot(t_.col(j));
        if (r < best - (bland ? 0.0 : 1e-15)) {
          enter = j;
          if (bland) break;
          best = r;
        }
      }
      if (enter < 0) {
        if (fresh) return LpStatus::kOptimal;
        Refactor();
        fresh = true;
        continue;
      }
      // Ratio test. Among rows tied at the minimum ratio the largest pivot
      // element wins (lowest basis index under Bland's rule, and on equal
      // elements), which keeps degenerate pivots numerically stable.
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a > kPivotTol) ratio = std::min(ratio, rhs_(i) / a);
      }
      int leave = -1;
      if (std::isfinite(ratio)) {
        const double slack = 1e-12 * (1.0 + std::abs(ratio));
        for (int i = 0; i < m; ++i) {
          const double a = t_(i, enter);
          if (a <= kPivotTol || rhs_(i) / a > ratio + slack) continue;
          if (leave < 0) {
            leave = i;
            continue;
          }
          const double current = t_(leave, enter);
          const bool better = bland ? basis_[i] < basis_[leave]
                                    : (a > current || (a == current && basis_[i] < basis_[leave]));
          if (better) leave = i;
        }
      }
      if (leave < 0) {
        if (fresh) return LpStatus::kUnbounded;
        Refactor();
        fresh = true;
        continue;
      }
      degenerate_run = ratio <= kFeasTol ? degenerate_run + 1 : 0;
      Pivot(leave, enter);
      ++*pivots;
      ++since_refactor;
      fresh = false;
    }
  }

  void Pivot(int row, int col) {
    const double p = t_(row, col);
    t_.row(row) /= p;
    rhs_(row) /= p;
    for (int i = 0; i < t_.rows(); ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f == 0.0) continue;
      t_.row(i) -= f * t_.row(row);
      rhs_(i) -= f * rhs_(row);
    }
    basis_[row] = col;
  }

  Matrix& t() { return t_; }
  Vector& rhs() { return rhs_; }
  std::vector<int>& basis() { return basis_; }

 private:
  Matrix original_;
  Vector original_rhs_;
  Matrix t_;
  Vector rhs_;
  std::vector<int> basis_;
};

}  // namespace

LpSolution SolveLinearProgram(const LinearProgram& lp, int max_pivots) {
  const int n = static_cast<int>(lp.c.size());
  const int m_ub = static_cast<int>(lp.b_ub.size());
  const int m_eq = static_cast<int>(lp.b_eq.size());
  if ((m_ub > 0 && lp.a_ub.cols() != n) || lp.a_ub.rows() != m_ub ||
      (m_eq > 0 && lp.a_eq.cols() != n) || lp.a_eq.rows() != m_eq) {
    Fail(ErrorCode::kDimensionMismatch, "linear program: inconsistent shapes");
  }
  const int m = m_ub + m_eq;
  // Columns: x (n), slacks (m_ub), artificials (one per row that needs one).
  std::vector<int> needs_artificial;
  for (int i = 0; i < m_ub; ++i) {
    if (lp.b_ub(i) < 0.0) needs_artificial.push_back(i);
  }
  for (int i = 0; i < m_eq; ++i) needs_artificial.push_back(m_ub + i);
  const int n_art = static_cast<int>(needs_artificial.size());
  const int cols = n + m_ub + n_art;

  Matrix t = Matrix::Zero(m, cols);
  Vector rhs(m);
  std::vector<int> basis(m, -1);
  for (int i = 0; i < m_ub; ++i) {
    t.row(i).head(n) = lp.a_ub.row(i);
    t(i, n + i) = 1.0;
    rhs(i) = lp.b_ub(i);
    if (rhs(i) < 0.0) {
      t.row(i) *= -1.0;
      rhs(i) *= -1.0;
    } else {
      basis[i] = n + i;
    }
  }
  for (int i = 0; i < m_eq; ++i) {
    t.row(m_ub + i).head(n) = lp.a_eq.row(i);
    rhs(m_ub + i) = lp.b_eq(i);
    if (rhs(m_ub + i) < 0.0) {
      t.row(m_ub + i) *= -1.0;
      rhs(m_ub + i) *= -1.0;
    }
  }
  for (int k = 0; k < n_art; ++k) {
    const int row = needs_artificial[k];
    t(row, n + m_ub + k) = 1.0;
    basis[row] = n + m_ub + k;
  }

  Tableau tab(std::move(t), std::move(rhs), std::move(basis));
  LpSolution sol;
  std::vector<bool> blocked(cols, false);

  if (n_art > 0) {
    Vector phase1 = Vector::Zero(cols);
    phase1.tail(n_art).setOnes();
    const LpStatus st = tab.Optimize(phase1, blocked, max_pivots, &sol.pivots);
    if (st == LpStatus::kIterationLimit) {
      sol.status = st;
      return sol;
    }
    double infeas = 0.0;
    for (int i = 0; i < m; ++i) {
      if (tab.basis()[i] >= n + m_ub) infeas += tab.rhs()(i);
    }
    if (infeas > kFeasTol * (1.0 + lp.b_ub.lpNorm<Eigen::Infinity>() +
                             (m_eq > 0 ? lp.b_eq.lpNorm<Eigen::Infinity>() : 0.0))) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (int i = 0; i < m; ++i) {
      if (tab.basis()[i] < n + m_ub) continue;
      int col = -1;
      for (int j = 0; j < n + m_ub; ++j) {
        if (std::abs(tab.t()(i, j)) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col >= 0) tab.Pivot(i, col);
    }
    for (int k = 0; k < n_art; ++k) blocked[n + m_ub + k] = true;
  }

  Vector cost = Vector::Zero(cols);
  cost.head(n) = lp.c;
  sol.status = tab.Optimize(cost, blocked, max_pivots, &sol.pivots);
  sol.x = Vector::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[i] < n) sol.x(tab.basis()[i]) = tab.rhs()(i);
  }
  sol.objective = lp.c.dot(sol.x);
  // y_i = c_B^T B^{-1} e_i in the original row orientation; the slack (or
  // artificial) column of row i holds sign_i * B^{-1} e_i.
  Vector cb(m);
  for (int i = 0; i < m; ++i) cb(i) = cost(tab.basis()[i]);
  sol.duals = Vector::Zero(m);
  for (int i = 0; i < m_ub; ++i) sol.duals(i) = cb.dot(tab.t().col(n + i));
  for (int k = 0; k < n_art; ++k) {
    const int row = needs_artificial[k];
    if (row < m_ub) continue;
    const double sign = lp.b_eq(row - m_ub) < 0.0 ? -1.0 : 1.0;
    sol.duals(row) = sign * cb.dot(tab.t().col(n + m_ub + k));
  }
  return sol;
}

}  // namespace lipproj
