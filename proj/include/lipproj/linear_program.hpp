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

#ifndef LIPPROJ_LINEAR_PROGRAM_HPP_
#define LIPPROJ_LINEAR_PROGRAM_HPP_

#include "lipproj/geometry.hpp"

namespace lipproj {

// minimize c^T x  subject to  a_ub x <= b_ub,  a_eq x = b_eq,  x >= 0.
struct LinearProgram {
  Vector c;
  Matrix a_ub;
  Vector b_ub;
  Matrix a_eq;
  Vector b_eq;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  double objective = 0.0;
  Vector x;
  // Multipliers for the a_ub rows followed by the a_eq rows, y_ub <= 0, with
  // objective == b_ub^T y_ub + b_eq^T y_eq at an optimum.
  Vector duals;
  int pivots = 0;
};

// Dense two-phase tableau simplex. Entering column: most negative reduced
// cost, lowest index on ties; after a run of degenerate pivots it falls back
// to Bland's rule. Feasibility tolerance 1e-9.
LpSolution SolveLinearProgram(const LinearProgram& lp, int max_pivots = 200000);

}  // namespace lipproj

#endif  // LIPPROJ_LINEAR_PROGRAM_HPP_
