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

#include "lipproj/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lipproj/error.hpp"
#include "lipproj/witness.hpp"

namespace lipproj {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi72 = std::numbers::pi / 72.0;

double Gap(double n) { return n - 2.0 * kSqrt2; }

void RequireGap(double n) {
  if (!(Gap(n) > 0.0)) Fail(ErrorCode::kDomain, "bound needs n - 2 sqrt 2 > 0 (n >= 3)");
}

void RequireDelta(double delta) {
  if (!(delta > 0.0 && delta < kPi72)) Fail(ErrorCode::kParameter, "delta must lie in (0, pi/72)");
}

// min of the two combination branches with the degree-k factors.
BoundReport TwoCase(int n, int k, double eps, double delta) {
  RequireGap(n);
  RequireDelta(delta);
  if (!(eps > 0.0) || !std::isfinite(eps)) Fail(ErrorCode::kParameter, "eps must be > 0");
  if (k < 2) Fail(ErrorCode::kParameter, "degree k must be >= 2");
  const double lip_factor = 0.5 * k;
  const double alpha_factor = k - 1.0;
  const double c_delta = (2.0 / 3.0) * (kSqrt2 - 1.0) * (kPi72 - delta);
  const double a = c_delta * alpha_factor * Gap(n);
  const double eps4 = eps * eps * eps * eps;
  const double alpha_branch = a / (lip_factor / eps4 + 2.0 * eps * a);
  const double eps_branch = 1.0 / (2.0 * eps);

  BoundReport r;
  r.n = n;
  r.k = k;
  r.eps = eps;
  r.delta = delta;
  r.lambda = OptimalLambda();
  r.c = SmallConstant();
  r.C = BoundConstant();
  r.bound_case = alpha_branch <= eps_branch ? BoundCase::kAlphaBranch : BoundCase::kEpsLarge;
  r.k_lower = std::min(alpha_branch, eps_branch);
  r.closed_form_k_lower = ClosedFormBound(n);
  r.optimizer_k_lower = r.k_lower;
  r.eps_star = eps;
  r.delta_star = delta;
  return r;
}

}  // namespace

double SmallConstant() { return (2.0 / 3.0) * (kSqrt2 - 1.0) * kPi72; }

double BoundConstant() {
  return 0.4 * std::pow((kSqrt2 - 1.0) / 3.0 * kPi72, 0.2);
}

double OptimalLambda() { return (2.0 / 3.0) * (kSqrt2 + 2.0); }

double LipQPsi(double alpha, double beta, int n) {
  if (n < 3) Fail(ErrorCode::kParameter, "lip_q_psi needs n >= 3");
  const double m = n - 1.0;
  return 2.0 * std::abs(alpha * m + beta * m * (n - 2.0) / 2.0);
}

double LipQPsiDLowerBound(double alpha, double beta, int d) {
  if (d < 2) Fail(ErrorCode::kParameter, "lip_q_psi_d needs d >= 2");
  const double m = d - 1.0;
  return 2.0 * std::abs(alpha * m + beta * m * (d - 2.0) / 2.0);
}

std::array<double, 2> LipMaxBranchConstants(double lambda) {
  return {lambda - 2.0, kSqrt2 - lambda / 2.0};
}

double LipMaxBound(double alpha, int n, double lambda) {
  if (n < 3) Fail(ErrorCode::kParameter, "two-case Lipschitz bound needs n >= 3");
  if (!(lambda > 2.0 && lambda < 2.0 * kSqrt2)) {
    Fail(ErrorCode::kParameter, "lambda must lie in (2, 2 sqrt 2)");
  }
  const auto [first, second] = LipMaxBranchConstants(lambda);
  const double a = std::abs(alpha);
  return std::min(first * a * (n - 1.0), second * a * Gap(n));
}

std::string_view LipMaxCaseName(LipMaxCase c) {
  return c == LipMaxCase::kBetaLarge ? "beta-large" : "beta-small";
}

LipMaxVerification VerifyLipMaxCases(double alpha, double beta, int n) {
  if (n < 3) Fail(ErrorCode::kParameter, "two-case Lipschitz verification needs n >= 3");
  const double lambda = OptimalLambda();
  const double a = std::abs(alpha);
  const double b = std::abs(beta);
  const double kappa = (2.0 / 3.0) * (kSqrt2 - 1.0);
  const int d = SubspaceDimension(n);

  LipMaxVerification v{};
  v.bound = kappa * a * Gap(n);
  if (b >= lambda * a / (n - 2.0)) {
    v.which = LipMaxCase::kBetaLarge;
    const double m = n - 1.0;
    v.chain = {
        LipQPsi(alpha, beta, n),
        2.0 * b * m * (n - 2.0) / 2.0 - 2.0 * a * m,
        (lambda - 2.0) * a * m,
        kappa * a * m,
        v.bound,
    };
  } else {
    v.which = LipMaxCase::kBetaSmall;
    const double m = d - 1.0;
    v.chain = {
        LipQPsiDLowerBound(alpha, beta, d),
        2.0 * a * m - 2.0 * b * m * (d - 2.0) / 2.0,
        2.0 * a * m - lambda * a * m * (d - 2.0) / (n - 2.0),
        // uses (d - 2)/(n - 2) <= 1/sqrt 2
        2.0 * a * m - lambda * a * m / kSqrt2,
        // uses d - 1 >= (n - 2 sqrt 2)/sqrt 2
        (kSqrt2 - lambda / 2.0) * a * Gap(n),
        v.bound,
    };
  }
  v.slack = v.chain.front() - v.bound;
  double scale = 1.0;
  for (double x : v.chain) scale = std::max(scale, std::abs(x));
  v.min_step_slack = 0.0;
  for (std::size_t i = 0; i + 1 < v.chain.size(); ++i) {
    v.min_step_slack = std::min(v.min_step_slack, (v.chain[i] - v.chain[i + 1]) / scale);
  }
  return v;
}

double AlphaLowerBound(double eps, double delta, double k_norm) {
  RequireDelta(delta);
  if (!(eps > 0.0)) Fail(ErrorCode::kParameter, "eps must be > 0");
  if (!(k_norm >= 0.0)) Fail(ErrorCode::kParameter, "K must be >= 0");
  return std::max(0.0, (kPi72 - delta) * (1.0 - 2.0 * eps * k_norm));
}

double ClosedFormBound(double n) {
  RequireGap(n);
  return BoundConstant() * std::pow(Gap(n), 0.2);
}

double ClosedFormEpsilon(double n) {
  RequireGap(n);
  return std::pow(2.0, 0.2) / (std::pow(SmallConstant(), 0.2) * std::pow(Gap(n), 0.2));
}

std::string_view BoundCaseName(BoundCase c) {
  return c == BoundCase::kAlphaBranch ? "alpha-branch" : "eps-large";
}

BoundReport CombinedBound(int n, double eps, double delta) {
  return TwoCase(n, 2, eps, delta);
}

BoundReport HigherOrderBound(int n, int k, double eps, double delta) {
  return TwoCase(n, k, eps, delta);
}

BoundReport HigherOrderBound(int n, int k) {
  if (k < 2) Fail(ErrorCode::kParameter, "degree k must be >= 2");
  BoundReport r = TwoCase(n, k, ClosedFormEpsilon(n), DefaultDeltaGrid().front());
  const BoundReport opt = OptimizeBound(n, k);
  r.optimizer_k_lower = opt.optimizer_k_lower;
  r.eps_star = opt.eps_star;
  r.delta_star = opt.delta_star;
  return r;
}

std::vector<double> DefaultEpsilonGrid() {
  // log-spaced on [1e-4, 1e2]
  std::vector<double> grid;
  constexpr int kPoints = 241;
  for (int i = 0; i < kPoints; ++i) {
    grid.push_back(std::pow(10.0, -4.0 + 6.0 * i / (kPoints - 1)));
  }
  return grid;
}

std::vector<double> DefaultDeltaGrid() {
  return {1e-15, 1e-12, std::numbers::pi / 1000.0, std::numbers::pi / 100.0};
}

BoundReport OptimizeBound(int n, const std::vector<double>& eps_grid,
                          const std::vector<double>& delta_grid, int k) {
  if (eps_grid.empty() || delta_grid.empty()) {
    Fail(ErrorCode::kParameter, "optimize_bound needs non-empty grids");
  }
  RequireGap(n);
  std::vector<double> eps_sorted = eps_grid;
  eps_sorted.push_back(ClosedFormEpsilon(n));
  std::sort(eps_sorted.begin(), eps_sorted.end());
  eps_sorted.erase(std::unique(eps_sorted.begin(), eps_sorted.end()), eps_sorted.end());
  for (double e : eps_sorted) {
    if (!(e > 0.0)) Fail(ErrorCode::kParameter, "eps grid must be positive");
  }

  BoundReport best;
  bool have = false;
  auto offer = [&](const BoundReport& r) {
    if (!have || r.k_lower > best.k_lower) {
      best = r;
      have = true;
    }
  };

  for (double delta : delta_grid) {
    std::size_t arg = 0;
    double top = -1.0;
    for (std::size_t i = 0; i < eps_sorted.size(); ++i) {
      const BoundReport r = TwoCase(n, k, eps_sorted[i], delta);
      offer(r);
      if (r.k_lower > top) {
        top = r.k_lower;
        arg = i;
      }
    }
    // Golden-section refinement in log eps between the neighbours of arg.
    double lo = std::log(eps_sorted[arg > 0 ? arg - 1 : arg]);
    double hi = std::log(eps_sorted[std::min(arg + 1, eps_sorted.size() - 1)]);
    if (hi > lo) {
      const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
      auto value = [&](double t) { return TwoCase(n, k, std::exp(t), delta).k_lower; };
      double x1 = hi - ratio * (hi - lo);
      double x2 = lo + ratio * (hi - lo);
      double f1 = value(x1);
      double f2 = value(x2);
      for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        if (f1 < f2) {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + ratio * (hi - lo);
          f2 = value(x2);
        } else {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - ratio * (hi - lo);
          f1 = value(x1);
        }
      }
      offer(TwoCase(n, k, std::exp(x1), delta));
      offer(TwoCase(n, k, std::exp(x2), delta));
    }
  }
  best.optimizer_k_lower = best.k_lower;
  best.eps_star = best.eps;
  best.delta_star = best.delta;
  return best;
}

BoundReport OptimizeBound(int n, int k) {
  return OptimizeBound(n, DefaultEpsilonGrid(), DefaultDeltaGrid(), k);
}

std::vector<BoundRow> BoundTable(const std::vector<int>& ns, int k) {
  std::vector<BoundRow> rows;
  rows.reserve(ns.size());
  for (int n : ns) {
    const BoundReport r = OptimizeBound(n, k);
    rows.push_back({n, k, ClosedFormBound(n), r.optimizer_k_lower, r.eps_star, r.delta_star,
                    std::string(BoundCaseName(r.bound_case))});
  }
  return rows;
}

std::string BoundTableCsv(const std::vector<BoundRow>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "n,k,closed_form_bound,optimizer_bound,eps_star,delta,case\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.k << ',' << r.closed_form_bound << ',' << r.optimizer_bound << ','
        << r.eps_star << ',' << r.delta << ',' << r.bound_case << '\n';
  }
  return out.str();
}

nlohmann::json BoundTableJson(const std::vector<BoundRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"n", r.n},
                   {"k", r.k},
                   {"closed_form_bound", r.closed_form_bound},
                   {"optimizer_bound", r.optimizer_bound},
                   {"eps_star", r.eps_star},
                   {"delta", r.delta},
                   {"case", r.bound_case}});
  }
  return out;
}

}  // namespace lipproj
