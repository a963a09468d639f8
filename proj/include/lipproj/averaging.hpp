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

#ifndef LIPPROJ_AVERAGING_HPP_
#define LIPPROJ_AVERAGING_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "lipproj/geometry.hpp"
#include "lipproj/polynomials.hpp"
#include "lipproj/witness.hpp"

namespace lipproj {

enum class AveragingGroup {
  kOrthogonal,     // Haar measure on O_n
  kPlaneRotation,  // SO_2 acting on (x1, x2), identity elsewhere
};

struct AveragedValue {
  double mean;
  double standard_error;  // sample std / sqrt(m)
};

// x -> (1/m) sum_s f(w_s x) over m group samples drawn from `seed`. The same
// samples are reused at every evaluation point.
class AveragedFunction {
 public:
  AveragedFunction(ScalarField f, int n, AveragingGroup group, int m, std::uint64_t seed);

  AveragedValue operator()(const Vector& x) const;

  int samples() const { return m_; }

 private:
  ScalarField f_;
  int n_;
  AveragingGroup group_;
  int m_;
  std::uint64_t seed_;
  std::vector<double> angles_;  // kPlaneRotation only
};

AveragedFunction AverageFunctionMc(ScalarField f, int n, AveragingGroup group, int m,
                                   std::uint64_t seed);

// Closed-form SO_2 average of psi_12: rho(sqrt(x1^2 + x2^2)) * eta.
double So2AveragePsiClosed(const Vector& x, const WitnessParams& params, double eta);
Vector So2AveragePsiClosedGradient(const Vector& x, const WitnessParams& params, double eta);

// Gradient of x -> eta N_2(x) - So2AveragePsiClosed(x); its norm is at most
// 4 eps eta on the ball.
Vector EtaN2MinusAverageGradient(const Vector& x, const WitnessParams& params, double eta);

struct EtaEstimate {
  double value;
  double error_bound;
  double delta;
};

// eta = (4 / 2pi) * integral of tau over [0, pi/2], by composite Simpson on
// each polynomial piece (exact for the piecewise quadratic profile). Fails
// with kContract when eta leaves [pi/72 - delta, pi/72].
EtaEstimate ComputeEta(const SmoothedAngleProfile& tau, int nodes = 256);

struct AlphaBeta {
  double alpha;
  double beta;
  double residual;  // Frobenius norm of A - (alpha N2 + beta (N - N2))
  bool beta_block_empty;
};

AlphaBeta ExtractAlphaBeta(const Quadratic& q);

// The function psi_12 o w, handed to synthetic linear maps.
class RotatedWitness {
 public:
  RotatedWitness(const WitnessField& field, OrthogonalMatrix rotation)
      : field_(&field), rotation_(std::move(rotation)) {}

  double operator()(const Vector& x) const;
  const OrthogonalMatrix& rotation() const { return rotation_; }
  const WitnessField& field() const { return *field_; }

 private:
  const WitnessField* field_;
  OrthogonalMatrix rotation_;
};

using WitnessMap = std::function<Quadratic(const RotatedWitness&)>;

// (1/m) sum_s L(psi_12 o w_s) o w_s^{-1} over m Haar samples of O_n.
Quadratic SymmetrizeMapOnWitness(const WitnessMap& map, const WitnessField& field, int m,
                                 std::uint64_t seed);

}  // namespace lipproj

#endif  // LIPPROJ_AVERAGING_HPP_
