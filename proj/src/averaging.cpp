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

#include "lipproj/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lipproj/error.hpp"

namespace lipproj {

AveragedFunction::AveragedFunction(ScalarField f, int n, AveragingGroup group, int m,
                                   std::uint64_t seed)
    : f_(std::move(f)), n_(n), group_(group), m_(m), seed_(seed) {
  if (m < 1) Fail(ErrorCode::kParameter, "average needs m >= 1");
  if (n < 1) Fail(ErrorCode::kInvalidDimension, "average needs n >= 1");
  if (group == AveragingGroup::kPlaneRotation) {
    if (n < 2) Fail(ErrorCode::kInvalidDimension, "plane rotations need n >= 2");
    Rng rng(seed);
    angles_.resize(m);
    for (auto& a : angles_) a = SampleSo2(rng);
  }
}

AveragedValue AveragedFunction::operator()(const Vector& x) const {
  if (x.size() != n_) Fail(ErrorCode::kDimensionMismatch, "average: dimension mismatch");
  // Welford accumulation of mean and variance.
  double mean = 0.0;
  double m2 = 0.0;
  auto push = [&](int k, double v) {
    const double d = v - mean;
    mean += d / (k + 1);
    m2 += d * (v - mean);
  };
  if (group_ == AveragingGroup::kPlaneRotation) {
    Vector y = x;
    for (int k = 0; k < m_; ++k) {
      const double c = std::cos(angles_[k]);
      const double s = std::sin(angles_[k]);
      y(0) = c * x(0) - s * x(1);
      y(1) = s * x(0) + c * x(1);
      push(k, f_(y));
    }
  } else {
    Rng rng(seed_);
    for (int k = 0; k < m_; ++k) push(k, f_(Apply(HaarSampleOrthogonal(n_, rng), x)));
  }
  const double variance = m_ > 1 ? m2 / (m_ - 1) : 0.0;
  return {mean, std::sqrt(variance / m_)};
}

AveragedFunction AverageFunctionMc(ScalarField f, int n, AveragingGroup group, int m,
                                   std::uint64_t seed) {
  return AveragedFunction(std::move(f), n, group, m, seed);
}

namespace {

double PlaneRadius(const Vector& x, const WitnessParams& params) {
  if (x.size() != params.n()) Fail(ErrorCode::kDimensionMismatch, "dimension mismatch");
  RequireInBall(x);
  return std::hypot(x(0), x(1));
}

}  // namespace

double So2AveragePsiClosed(const Vector& x, const WitnessParams& params, double eta) {
  return Rho(PlaneRadius(x, params), params.eps()) * eta;
}

Vector So2AveragePsiClosedGradient(const Vector& x, const WitnessParams& params, double eta) {
  const double r = PlaneRadius(x, params);
  Vector g = Vector::Zero(x.size());
  if (r < 2.0 * params.eps()) return g;
  const double scale = eta * RhoDerivative(r, params.eps()) / r;
  g(0) = scale * x(0);
  g(1) = scale * x(1);
  return g;
}

Vector EtaN2MinusAverageGradient(const Vector& x, const WitnessParams& params, double eta) {
  Vector g = -So2AveragePsiClosedGradient(x, params, eta);
  g(0) += 2.0 * eta * x(0);
  g(1) += 2.0 * eta * x(1);
  return g;
}

EtaEstimate ComputeEta(const SmoothedAngleProfile& tau, int nodes) {
  if (nodes < 64) Fail(ErrorCode::kParameter, "compute_eta needs at least 64 nodes");
  const auto pieces = tau.Pieces();
  const double total = std::numbers::pi / 2.0;
  double integral = 0.0;
  double magnitude = 0.0;
  int evaluations = 0;
  for (const auto& p : pieces) {
    const double len = p.hi - p.lo;
    int panels = static_cast<int>(std::ceil(nodes * len / total));
    panels = std::max(2, panels + (panels % 2));
    const double h = len / panels;
    double sum = p.Value(p.lo) + p.Value(p.hi);
    for (int i = 1; i < panels; ++i) {
      sum += (i % 2 == 1 ? 4.0 : 2.0) * p.Value(p.lo + i * h);
    }
    integral += sum * h / 3.0;
    magnitude += std::abs(p.c0) * len + std::abs(p.c1) * len * len + std::abs(p.c2) * len * len * len +
                 std::abs(p.c3) * len * len * len * len;
    evaluations += panels + 1;
  }
  EtaEstimate out{};
  out.delta = tau.delta();
  out.value = 4.0 * integral / (2.0 * std::numbers::pi);
  // Simpson is exact on cubics; only rounding remains.
  out.error_bound = 4.0 * evaluations * std::numeric_limits<double>::epsilon() * magnitude /
                    (2.0 * std::numbers::pi);
  const double top = std::numbers::pi / 72.0;
  const double slack = out.error_bound;
  if (out.value > top + slack || out.value < top - tau.delta() - slack) {
    Fail(ErrorCode::kContract, "eta outside the band [pi/72 - delta, pi/72]");
  }
  return out;
}

AlphaBeta ExtractAlphaBeta(const Quadratic& q) {
  const Matrix& a = q.matrix();
  const int n = q.dim();
  if (n < 2) Fail(ErrorCode::kInvalidDimension, "alpha/beta extraction needs dim >= 2");
  AlphaBeta out{};
  out.alpha = 0.5 * (a(0, 0) + a(1, 1));
  out.beta_block_empty = n < 3;
  out.beta = out.beta_block_empty ? 0.0 : a.diagonal().tail(n - 2).mean();
  Vector fit(n);
  fit.head(2).setConstant(out.alpha);
  if (n > 2) fit.tail(n - 2).setConstant(out.beta);
  out.residual = (a - Matrix(fit.asDiagonal())).norm();
  return out;
}

double RotatedWitness::operator()(const Vector& x) const {
  return field_->PsiIJ(Apply(rotation_, x), 1, 2);
}

Quadratic SymmetrizeMapOnWitness(const WitnessMap& map, const WitnessField& field, int m,
                                 std::uint64_t seed) {
  if (m < 1) Fail(ErrorCode::kParameter, "symmetrize needs m >= 1");
  const int n = field.params().n();
  Rng rng(seed);
  Matrix acc = Matrix::Zero(n, n);
  for (int k = 0; k < m; ++k) {
    OrthogonalMatrix w = HaarSampleOrthogonal(n, rng);
    const Quadratic image = map(RotatedWitness(field, w));
    acc += ComposeRotation(image, w.Transpose()).matrix();
  }
  return Quadratic(acc / m);
}

}  // namespace lipproj
