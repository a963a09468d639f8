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

#ifndef LIPPROJ_BOUNDS_HPP_
#define LIPPROJ_BOUNDS_HPP_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace lipproj {

// c = (2/3)(sqrt 2 - 1)(pi/72).
double SmallConstant();
// C = (2/5)((sqrt 2 - 1)/3 * pi/72)^(1/5) = (2^(4/5)/5) c^(1/5).
double BoundConstant();
// lambda* = (2/3)(sqrt 2 + 2), where lambda - 2 = sqrt 2 - lambda/2.
double OptimalLambda();

// Lip(Q(Psi)) = 2 |alpha (n-1) + beta (n-1)(n-2)/2|.
double LipQPsi(double alpha, double beta, int n);
// 2 |alpha (d-1) + beta (d-1)(d-2)/2|, a lower bound for Lip(Q(Psi_d))
// obtained by restricting to R^d.
double LipQPsiDLowerBound(double alpha, double beta, int d);

// The "LipMax" routines bound max{Lip(Q(Psi)), Lip(Q(Psi_d))} from below by
// (2/3)(sqrt 2 - 1)|alpha|(n - 2 sqrt 2), splitting on the size of beta.

// (lambda - 2, sqrt 2 - lambda/2).
std::array<double, 2> LipMaxBranchConstants(double lambda);
// min{(lambda-2)|alpha|(n-1), (sqrt 2 - lambda/2)|alpha|(n - 2 sqrt 2)};
// lambda must lie in (2, 2 sqrt 2).
double LipMaxBound(double alpha, int n, double lambda);

enum class LipMaxCase { kBetaLarge, kBetaSmall };
std::string_view LipMaxCaseName(LipMaxCase c);

struct LipMaxVerification {
  LipMaxCase which;
  // Successive lines of the inequality chain for the selected case; each
  // line is >= the next. The last entry is the target bound.
  std::vector<double> chain;
  double bound;           // (2/3)(sqrt 2 - 1)|alpha|(n - 2 sqrt 2)
  double slack;           // chain.front() - bound
  double min_step_slack;  // min_i (chain[i] - chain[i+1]) / scale
};

// Evaluates the two-case argument at lambda* for concrete (alpha, beta, n).
LipMaxVerification VerifyLipMaxCases(double alpha, double beta, int n);

// (pi/72 - delta)(1 - 2 eps K), clamped at 0.
double AlphaLowerBound(double eps, double delta, double k_norm);

// C (n - 2 sqrt 2)^(1/5). Fails with kDomain when n <= 2 sqrt 2.
double ClosedFormBound(double n);
// eps = 2^(1/5) / (c^(1/5) (n - 2 sqrt 2)^(1/5)), the minimiser of
// 1/eps^4 + 2 eps c (n - 2 sqrt 2).
double ClosedFormEpsilon(double n);

enum class BoundCase {
  kAlphaBranch,  // the 2 eps K <= 1 branch gives the smaller bound
  kEpsLarge,     // the 1/(2 eps) branch gives the smaller bound
};
std::string_view BoundCaseName(BoundCase c);

struct BoundReport {
  int n = 0;
  int k = 2;
  double eps = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  double c = 0.0;
  double C = 0.0;
  BoundCase bound_case = BoundCase::kAlphaBranch;
  double k_lower = 0.0;            // two-case bound at (eps, delta)
  double closed_form_k_lower = 0.0;      // C (n - 2 sqrt 2)^(1/5)
  double optimizer_k_lower = 0.0;  // best over the search grids
  double eps_star = 0.0;
  double delta_star = 0.0;
};

// K_n >= min{ c_d (n - 2 sqrt 2) / (1/eps^4 + 2 eps c_d (n - 2 sqrt 2)), 1/(2 eps) }
// with c_d = (2/3)(sqrt 2 - 1)(pi/72 - delta). Any eps > 0 is accepted.
BoundReport CombinedBound(int n, double eps, double delta);

// Degree-k variant: Lipschitz budget k/(2 eps^4), alpha factor (k - 1).
BoundReport HigherOrderBound(int n, int k, double eps, double delta);
// At ClosedFormEpsilon(n) and a vanishing delta, with the optimiser filled in.
BoundReport HigherOrderBound(int n, int k);

std::vector<double> DefaultEpsilonGrid();
std::vector<double> DefaultDeltaGrid();

// Maximises the two-case bound over the grids, refining eps by golden-section
// search around the best grid point. ClosedFormEpsilon(n) is always a candidate.
BoundReport OptimizeBound(int n, const std::vector<double>& eps_grid,
                          const std::vector<double>& delta_grid, int k = 2);
BoundReport OptimizeBound(int n, int k = 2);

struct BoundRow {
  int n;
  int k;
  double closed_form_bound;
  double optimizer_bound;
  double eps_star;
  double delta;
  std::string bound_case;
};

std::vector<BoundRow> BoundTable(const std::vector<int>& ns, int k = 2);

// Columns n,k,closed_form_bound,optimizer_bound,eps_star,delta,case; 12 significant
// digits.
std::string BoundTableCsv(const std::vector<BoundRow>& rows);
// Array of objects with the same fields; 17 significant digits on dump.
nlohmann::json BoundTableJson(const std::vector<BoundRow>& rows);

}  // namespace lipproj

#endif  // LIPPROJ_BOUNDS_HPP_
