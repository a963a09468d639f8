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

#include <cmath>

#include <gtest/gtest.h>

#include "lipproj/linear_program.hpp"
#include "lipproj/rng.hpp"
#include "test_support.hpp"

namespace lipproj {
namespace {

Matrix Rows(int r, int c, std::initializer_list<double> v) {
  Matrix m(r, c);
  auto it = v.begin();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = *it++;
  return m;
}

Vector Vec(std::initializer_list<double> v) {
  Vector x(static_cast<int>(v.size()));
  int i = 0;
  for (double c : v) x(i++) = c;
  return x;
}

TEST(SimplexSolver, TextbookMaximisation) {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18: optimum 36 at (2, 6).
  LinearProgram lp;
  lp.c = Vec({-3, -5});
  lp.a_ub = Rows(3, 2, {1, 0, 0, 2, 3, 2});
  lp.b_ub = Vec({4, 12, 18});
  lp.a_eq = Matrix(0, 2);
  lp.b_eq = Vector(0);
  const LpSolution s = SolveLinearProgram(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -36.0, 1e-12);
  EXPECT_NEAR(s.x(0), 2.0, 1e-12);
  EXPECT_NEAR(s.x(1), 6.0, 1e-12);
}

TEST(SimplexSolver, EqualityAndNegativeRightHandSide) {
  // min x + 2y s.t. x + y = 3, -x <= -1: optimum 3 at (3, 0).
  LinearProgram lp;
  lp.c = Vec({1, 2});
  lp.a_ub = Rows(1, 2, {-1, 0});
  lp.b_ub = Vec({-1});
  lp.a_eq = Rows(1, 2, {1, 1});
  lp.b_eq = Vec({3});
  const LpSolution s = SolveLinearProgram(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, 3.0, 1e-12);
  ASSERT_EQ(s.duals.size(), 2);
  EXPECT_NEAR(-1.0 * s.duals(0) + 3.0 * s.duals(1), 3.0, 1e-12);
}

TEST(SimplexSolver, DetectsInfeasibleAndUnbounded) {
  LinearProgram infeasible;
  infeasible.c = Vec({1});
  infeasible.a_ub = Rows(1, 1, {1});
  infeasible.b_ub = Vec({1});
  infeasible.a_eq = Rows(1, 1, {1});
  infeasible.b_eq = Vec({2});
  EXPECT_EQ(SolveLinearProgram(infeasible).status, LpStatus::kInfeasible);

  LinearProgram unbounded;
  unbounded.c = Vec({-1, 0});
  unbounded.a_ub = Rows(1, 2, {-1, 1});
  unbounded.b_ub = Vec({1});
  unbounded.a_eq = Matrix(0, 2);
  unbounded.b_eq = Vector(0);
  EXPECT_EQ(SolveLinearProgram(unbounded).status, LpStatus::kUnbounded);
}

TEST(SimplexSolver, DegenerateProblemTerminates) {
  // Classic cycling example for Dantzig's rule without anti-cycling.
  LinearProgram lp;
  lp.c = Vec({-0.75, 150, -0.02, 6});
  lp.a_ub = Rows(3, 4, {0.25, -60, -0.04, 9, 0.5, -90, -0.02, 3, 0, 0, 1, 0});
  lp.b_ub = Vec({0, 0, 1});
  lp.a_eq = Matrix(0, 4);
  lp.b_eq = Vector(0);
  const LpSolution s = SolveLinearProgram(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -0.05, 1e-12);
}

TEST(SimplexSolver, StrongDualityOnRandomProblems) {
  Rng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + static_cast<int>(rng.Index(8)), n = 2 + static_cast<int>(rng.Index(8));
    Matrix a(m + 1, n);
    Vector b(m + 1), c(n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = rng.Uniform(-1.0, 1.0);
      b(i) = rng.Uniform(0.0, 2.0);
    }
    a.row(m).setOnes();  // bounded region
    b(m) = 10.0;
    for (int j = 0; j < n; ++j) c(j) = rng.Uniform(-1.0, 1.0);
    LinearProgram primal{c, a, b, Matrix(0, n), Vector(0)};
    const LpSolution ps = SolveLinearProgram(primal);
    ASSERT_EQ(ps.status, LpStatus::kOptimal);
    EXPECT_LE((a * ps.x - b).maxCoeff(), 1e-9);
    EXPECT_GE(ps.x.minCoeff(), -1e-12);
    EXPECT_NEAR(c.dot(ps.x), ps.objective, 1e-12);
    // Dual: min b^T z s.t. -A^T z <= c, z >= 0, optimum = -primal optimum.
    LinearProgram dual{b, -a.transpose(), c, Matrix(0, m + 1), Vector(0)};
    const LpSolution ds = SolveLinearProgram(dual);
    ASSERT_EQ(ds.status, LpStatus::kOptimal);
    EXPECT_NEAR(ps.objective, -ds.objective, 1e-9);
    // Reported multipliers are dual feasible and certify the optimum.
    ASSERT_EQ(ps.duals.size(), m + 1);
    EXPECT_LE(ps.duals.maxCoeff(), 1e-12);
    EXPECT_NEAR(b.dot(ps.duals), ps.objective, 1e-9);
    EXPECT_LE((a.transpose() * ps.duals - c).maxCoeff(), 1e-9);
  }
}

TEST(SimplexSolver, RejectsInconsistentShapes) {
  LinearProgram lp;
  lp.c = Vec({1, 2});
  lp.a_ub = Rows(1, 3, {1, 1, 1});
  lp.b_ub = Vec({1});
  lp.a_eq = Matrix(0, 2);
  lp.b_eq = Vector(0);
  EXPECT_LIPPROJ_ERROR(SolveLinearProgram(lp), ErrorCode::kDimensionMismatch);
}

}  // namespace
}  // namespace lipproj
