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

#ifndef LIPPROJ_WITNESS_HPP_
#define LIPPROJ_WITNESS_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "lipproj/geometry.hpp"

namespace lipproj {

// Parameters of the witness family. n >= 3, 0 < eps < 1/2,
// 0 < delta < pi/72, d = floor(n / sqrt(2)).
class WitnessParams {
 public:
  WitnessParams(int n, double eps, double delta);

  int n() const { return n_; }
  double eps() const { return eps_; }
  double delta() const { return delta_; }
  int d() const { return d_; }

 private:
  int n_;
  double eps_;
  double delta_;
  int d_;
};

// floor(n / sqrt(2)).
int SubspaceDimension(int n);

// rho(r) = (r - 2 eps)^2 for r >= 2 eps, 0 below. Domain r in [0, 1].
double Rho(double r, double eps);
double RhoDerivative(double r, double eps);

// Tent max{pi/12 - |theta - pi/4|, 0} on [0, pi/2].
double Tau0(double theta);

// One cubic piece c0 + c1 s + c2 s^2 + c3 s^3, s = theta - lo, on [lo, hi].
struct ProfilePiece {
  double lo;
  double hi;
  double c0;
  double c1;
  double c2;
  double c3 = 0.0;

  double Value(double theta) const;
  double Slope(double theta) const;
};

// C^2 profile tau on [0, pi/2], symmetric about pi/4, with
// tau0 - delta/2 <= tau <= tau0, |tau'| <= 1 and the same support as tau0.
//
// The profile is stored as its half u -> g(u) on u = |theta - pi/4| in
// [0, pi/4]; evaluating through u makes the symmetry exact in floating point.
// g follows the tent except on two blending intervals of width delta/2 at
// the apex and at the support edge, so tau(pi/4) = pi/12 - delta/2 and the
// integral of tau0 - tau equals pi*delta/48.
class SmoothedAngleProfile {
 public:
  // delta in (0, pi/72).
  static SmoothedAngleProfile Build(double delta);
  // The unsmoothed tent tau0 in the same representation (delta = 0).
  static SmoothedAngleProfile Tent();
  // Fault injection for the certification commands: scales the profile by
  // 1.5 on theta > pi/4, which breaks the reflection symmetry.
  SmoothedAngleProfile Corrupted() const;

  double delta() const { return delta_; }
  bool corrupted() const { return corrupted_; }

  double operator()(double theta) const;
  double Derivative(double theta) const;
  // tau(pi/4 + offset) and tau'(pi/4 + offset), |offset| <= pi/4.
  double ValueAtOffset(double offset) const;
  double DerivativeAtOffset(double offset) const;

  // Pieces of the half profile g over u in [0, pi/4], ordered by u.
  const std::vector<ProfilePiece>& half_pieces() const { return half_; }
  // Pieces over theta in [0, pi/2], ordered, covering the whole interval.
  std::vector<ProfilePiece> Pieces() const;
  // Sorted interior breakpoints in theta.
  std::vector<double> Breakpoints() const;

 private:
  SmoothedAngleProfile(double delta, std::vector<ProfilePiece> half)
      : delta_(delta), half_(std::move(half)) {}

  const ProfilePiece& PieceAt(double u) const;

  double delta_;
  bool corrupted_ = false;
  std::vector<ProfilePiece> half_;
};

SmoothedAngleProfile BuildTau(double delta);

// The planar witness psi(x, y) = rho(r) tau(theta), theta the angle of
// (|x|, |y|). Owns its profile.
class PlanarWitness {
 public:
  explicit PlanarWitness(double eps, SmoothedAngleProfile tau);
  explicit PlanarWitness(const WitnessParams& params);

  double eps() const { return eps_; }
  const SmoothedAngleProfile& tau() const { return tau_; }

  double operator()(double x, double y) const;
  std::array<double, 2> Gradient(double x, double y) const;

  // Unchecked variants used inside the n-dimensional sums, where the ball
  // check has already been done on the whole vector.
  double ValueUnchecked(double x, double y) const;
  std::array<double, 2> GradientUnchecked(double x, double y) const;

 private:
  double eps_;
  SmoothedAngleProfile tau_;
};

double Psi(double x, double y, const WitnessParams& params);
std::array<double, 2> GradPsi(double x, double y, const WitnessParams& params);

// Indices i (0-based) with |x_i| >= eps, in increasing order.
std::vector<int> ActiveIndices(const Vector& x, double eps);

// Psi = sum_{i<j<=n} psi_ij and Psi_d = sum_{i<j<=d} psi_ij.
class WitnessField {
 public:
  explicit WitnessField(const WitnessParams& params);
  WitnessField(const WitnessParams& params, SmoothedAngleProfile tau);

  const WitnessParams& params() const { return params_; }
  const PlanarWitness& planar() const { return planar_; }

  // psi(x_i, x_j), 1-based indices i < j.
  double PsiIJ(const Vector& x, int i, int j) const;

  double Psi(const Vector& x) const;
  double PsiD(const Vector& x) const;
  Vector GradPsi(const Vector& x) const;
  Vector GradPsiD(const Vector& x) const;

  // Reference O(n^2) double sums over all pairs.
  double PsiNaive(const Vector& x) const;
  double PsiDNaive(const Vector& x) const;

 private:
  double SumOver(const Vector& x, int limit) const;
  Vector GradOver(const Vector& x, int limit) const;
  double NaiveOver(const Vector& x, int limit) const;
  void Check(const Vector& x) const;

  WitnessParams params_;
  PlanarWitness planar_;
};

using ScalarField = std::function<double(const Vector&)>;
using VectorField = std::function<Vector(const Vector&)>;

// Point of the ball with between 2 and min(n, 1/eps^2) coordinates of
// magnitude >= eps and the rest zero, so that several pairs are active.
Vector SampleSupportPoint(int n, double eps, Rng& rng);

struct LipSamplerConfig {
  std::uint64_t seed = 1;
  int ball_samples = 20000;
  int sphere_samples = 20000;
  // Points with a random number of coordinates of size >= shell_eps.
  int shell_samples = 20000;
  double shell_eps = 0.0;  // 0 disables the shell stratum
  int ascent_starts = 16;
  int ascent_iterations = 200;
  int consistency_points = 64;
  double consistency_tolerance = 1e-4;
};

struct LipEstimate {
  double lower_bound;
  Vector argmax;
  double max_fd_residual;  // worst finite-difference residual in the spot check
};

// Certified lower bound on Lip(f) = sup ||grad f|| over the ball: maximum of
// the gradient norm over a mixed sample, refined by hill climbing.
LipEstimate EstimateLip(const ScalarField& f, const VectorField& grad, int n,
                        const LipSamplerConfig& config);

// One CSV row per point: x1..xn, value, grad_norm.
void WriteWitnessCsv(std::ostream& out, const WitnessField& field,
                     const std::vector<Vector>& points);

}  // namespace lipproj

#endif  // LIPPROJ_WITNESS_HPP_
