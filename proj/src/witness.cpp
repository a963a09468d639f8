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

#include "lipproj/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "lipproj/error.hpp"

namespace lipproj {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuarter = kPi / 4.0;
constexpr double kTwelfth = kPi / 12.0;

}  // namespace

int SubspaceDimension(int n) {
  return static_cast<int>(std::floor(static_cast<double>(n) / std::numbers::sqrt2));
}

WitnessParams::WitnessParams(int n, double eps, double delta)
    : n_(n), eps_(eps), delta_(delta), d_(SubspaceDimension(n)) {
  if (n < 3) Fail(ErrorCode::kParameter, "witness needs n >= 3 (n - 2 sqrt 2 > 0)");
  if (!(eps > 0.0 && 2.0 * eps < 1.0)) {
    Fail(ErrorCode::kParameter, "witness needs 0 < eps < 1/2");
  }
  if (!(delta > 0.0 && delta < kPi / 72.0)) {
    Fail(ErrorCode::kParameter, "witness needs 0 < delta < pi/72");
  }
}

double Rho(double r, double eps) {
  if (!(r >= 0.0 && r <= 1.0 + kBallSlack)) Fail(ErrorCode::kDomain, "rho: r outside [0, 1]");
  if (r < 2.0 * eps) return 0.0;
  const double s = r - 2.0 * eps;
  return s * s;
}

double RhoDerivative(double r, double eps) {
  if (!(r >= 0.0 && r <= 1.0 + kBallSlack)) Fail(ErrorCode::kDomain, "rho: r outside [0, 1]");
  return r < 2.0 * eps ? 0.0 : 2.0 * (r - 2.0 * eps);
}

double Tau0(double theta) {
  if (!(theta >= 0.0 && theta <= kPi / 2.0)) {
    Fail(ErrorCode::kDomain, "tau0: theta outside [0, pi/2]");
  }
  return std::max(kTwelfth - std::abs(theta - kQuarter), 0.0);
}

double ProfilePiece::Value(double theta) const {
  const double s = theta - lo;
  return c0 + s * (c1 + s * (c2 + s * c3));
}

double ProfilePiece::Slope(double theta) const {
  const double s = theta - lo;
  return c1 + s * (2.0 * c2 + 3.0 * c3 * s);
}

SmoothedAngleProfile SmoothedAngleProfile::Build(double delta) {
  if (!(delta > 0.0 && delta < kPi / 72.0)) {
    Fail(ErrorCode::kParameter, "tau: delta must lie in (0, pi/72)");
  }
  // The slope magnitude s = -g' climbs from 0 to 1 over [0, a] and falls
  // back over [pi/12 - a, pi/12] along the C^1 ramp 2t^2 | 1 - 2(1-t)^2,
  // which makes g piecewise cubic and C^2.
  const double a = 0.5 * delta;
  const double b = 0.5 * a;
  const double k = 2.0 / (3.0 * a * a);
  const double l = kTwelfth;
  std::vector<ProfilePiece> pieces{
      {0.0, b, l - a, 0.0, 0.0, -k},
      {b, a, l - 13.0 * a / 12.0, -0.5, -1.0 / a, k},
      {a, l - a, l - 1.5 * a, -1.0, 0.0, 0.0},
      {l - a, l - b, 0.5 * a, -1.0, 0.0, k},
      {l - b, l, a / 12.0, -0.5, 1.0 / a, -k},
      {l, kQuarter, 0.0, 0.0, 0.0, 0.0},
  };
  return SmoothedAngleProfile(delta, std::move(pieces));
}

SmoothedAngleProfile SmoothedAngleProfile::Tent() {
  std::vector<ProfilePiece> pieces{
      {0.0, kTwelfth, kTwelfth, -1.0, 0.0},
      {kTwelfth, kQuarter, 0.0, 0.0, 0.0},
  };
  return SmoothedAngleProfile(0.0, std::move(pieces));
}

SmoothedAngleProfile SmoothedAngleProfile::Corrupted() const {
  SmoothedAngleProfile out = *this;
  out.corrupted_ = true;
  return out;
}

const ProfilePiece& SmoothedAngleProfile::PieceAt(double u) const {
  for (const auto& p : half_) {
    if (u <= p.hi) return p;
  }
  return half_.back();
}

double SmoothedAngleProfile::ValueAtOffset(double offset) const {
  const double u = std::abs(offset);
  const double value = PieceAt(u).Value(u);
  return (corrupted_ && offset > 0.0) ? 1.5 * value : value;
}

double SmoothedAngleProfile::DerivativeAtOffset(double offset) const {
  const double u = std::abs(offset);
  const double slope = PieceAt(u).Slope(u);
  if (offset > 0.0) return corrupted_ ? 1.5 * slope : slope;
  return -slope;
}

double SmoothedAngleProfile::operator()(double theta) const {
  if (!(theta >= 0.0 && theta <= kPi / 2.0)) {
    Fail(ErrorCode::kDomain, "tau: theta outside [0, pi/2]");
  }
  return ValueAtOffset(theta - kQuarter);
}

double SmoothedAngleProfile::Derivative(double theta) const {
  if (!(theta >= 0.0 && theta <= kPi / 2.0)) {
    Fail(ErrorCode::kDomain, "tau: theta outside [0, pi/2]");
  }
  return DerivativeAtOffset(theta - kQuarter);
}

std::vector<ProfilePiece> SmoothedAngleProfile::Pieces() const {
  std::vector<ProfilePiece> out;
  // Left half: theta = pi/4 - u, traversed from u = pi/4 down to u = 0.
  for (auto it = half_.rbegin(); it != half_.rend(); ++it) {
    const double len = it->hi - it->lo;
    // g(hi - s) re-expanded around s = 0.
    out.push_back({kQuarter - it->hi, kQuarter - it->lo, it->Value(it->hi), -it->Slope(it->hi),
                   it->c2 + 3.0 * it->c3 * len, -it->c3});
  }
  const double scale = corrupted_ ? 1.5 : 1.0;
  for (const auto& p : half_) {
    out.push_back({kQuarter + p.lo, kQuarter + p.hi, scale * p.c0, scale * p.c1, scale * p.c2,
                   scale * p.c3});
  }
  // Drop zero-length pieces (none for delta > 0; kept for safety with Tent).
  std::erase_if(out, [](const ProfilePiece& p) { return !(p.hi > p.lo); });
  return out;
}

std::vector<double> SmoothedAngleProfile::Breakpoints() const {
  std::vector<double> out;
  const auto pieces = Pieces();
  for (std::size_t i = 1; i < pieces.size(); ++i) out.push_back(pieces[i].lo);
  return out;
}

SmoothedAngleProfile BuildTau(double delta) { return SmoothedAngleProfile::Build(delta); }

PlanarWitness::PlanarWitness(double eps, SmoothedAngleProfile tau)
    : eps_(eps), tau_(std::move(tau)) {
  if (!(eps > 0.0 && 2.0 * eps < 1.0)) Fail(ErrorCode::kParameter, "psi needs 0 < eps < 1/2");
}

PlanarWitness::PlanarWitness(const WitnessParams& params)
    : PlanarWitness(params.eps(), BuildTau(params.delta())) {}

double PlanarWitness::ValueUnchecked(double x, double y) const {
  const double a = std::abs(x);
  const double b = std::abs(y);
  if (a < eps_ || b < eps_) return 0.0;
  const double r = std::hypot(a, b);
  if (r < 2.0 * eps_) return 0.0;
  // theta - pi/4 for theta = atan(b / a); antisymmetric under a <-> b.
  const double offset = std::atan2(b - a, a + b);
  const double s = r - 2.0 * eps_;
  return s * s * tau_.ValueAtOffset(offset);
}

std::array<double, 2> PlanarWitness::GradientUnchecked(double x, double y) const {
  const double a = std::abs(x);
  const double b = std::abs(y);
  if (a < eps_ || b < eps_) return {0.0, 0.0};
  const double r = std::hypot(a, b);
  if (r < 2.0 * eps_) return {0.0, 0.0};
  const double offset = std::atan2(b - a, a + b);
  const double s = r - 2.0 * eps_;
  const double radial = 2.0 * s * tau_.ValueAtOffset(offset);              // rho' tau
  const double angular = s * s * tau_.DerivativeAtOffset(offset) / r;  // rho tau' / r
  const double c = a / r;
  const double sn = b / r;
  const double da = radial * c - angular * sn;
  const double db = radial * sn + angular * c;
  return {std::copysign(1.0, x) * da, std::copysign(1.0, y) * db};
}

double PlanarWitness::operator()(double x, double y) const {
  if (!(std::isfinite(x) && std::isfinite(y)) || x * x + y * y > 1.0 + 2.0 * kBallSlack) {
    Fail(ErrorCode::kDomain, "psi: point outside the closed unit disc");
  }
  return ValueUnchecked(x, y);
}

std::array<double, 2> PlanarWitness::Gradient(double x, double y) const {
  if (!(std::isfinite(x) && std::isfinite(y)) || x * x + y * y > 1.0 + 2.0 * kBallSlack) {
    Fail(ErrorCode::kDomain, "grad psi: point outside the closed unit disc");
  }
  return GradientUnchecked(x, y);
}

double Psi(double x, double y, const WitnessParams& params) {
  return PlanarWitness(params)(x, y);
}

std::array<double, 2> GradPsi(double x, double y, const WitnessParams& params) {
  return PlanarWitness(params).Gradient(x, y);
}

std::vector<int> ActiveIndices(const Vector& x, double eps) {
  std::vector<int> out;
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) >= eps) out.push_back(i);
  }
  return out;
}

WitnessField::WitnessField(const WitnessParams& params)
    : params_(params), planar_(params) {}

WitnessField::WitnessField(const WitnessParams& params, SmoothedAngleProfile tau)
    : params_(params), planar_(params.eps(), std::move(tau)) {}

void WitnessField::Check(const Vector& x) const {
  if (x.size() != params_.n()) Fail(ErrorCode::kDimensionMismatch, "witness: dimension mismatch");
  RequireInBall(x);
}

double WitnessField::PsiIJ(const Vector& x, int i, int j) const {
  Check(x);
  if (i < 1 || j > params_.n() || i >= j) Fail(ErrorCode::kIndex, "psi_ij needs 1 <= i < j <= n");
  return planar_.ValueUnchecked(x(i - 1), x(j - 1));
}

double WitnessField::SumOver(const Vector& x, int limit) const {
  Check(x);
  const auto active = ActiveIndices(x.head(limit), params_.eps());
  double sum = 0.0;
  for (std::size_t p = 0; p < active.size(); ++p) {
    for (std::size_t q = p + 1; q < active.size(); ++q) {
      sum += planar_.ValueUnchecked(x(active[p]), x(active[q]));
    }
  }
  return sum;
}

Vector WitnessField::GradOver(const Vector& x, int limit) const {
  Check(x);
  Vector g = Vector::Zero(x.size());
  const auto active = ActiveIndices(x.head(limit), params_.eps());
  for (std::size_t p = 0; p < active.size(); ++p) {
    for (std::size_t q = p + 1; q < active.size(); ++q) {
      const auto gij = planar_.GradientUnchecked(x(active[p]), x(active[q]));
      g(active[p]) += gij[0];
      g(active[q]) += gij[1];
    }
  }
  return g;
}

double WitnessField::NaiveOver(const Vector& x, int limit) const {
  Check(x);
  double sum = 0.0;
  for (int i = 0; i < limit; ++i) {
    for (int j = i + 1; j < limit; ++j) sum += planar_.ValueUnchecked(x(i), x(j));
  }
  return sum;
}

double WitnessField::Psi(const Vector& x) const { return SumOver(x, params_.n()); }
double WitnessField::PsiD(const Vector& x) const { return SumOver(x, params_.d()); }
Vector WitnessField::GradPsi(const Vector& x) const { return GradOver(x, params_.n()); }
Vector WitnessField::GradPsiD(const Vector& x) const { return GradOver(x, params_.d()); }
double WitnessField::PsiNaive(const Vector& x) const { return NaiveOver(x, params_.n()); }
double WitnessField::PsiDNaive(const Vector& x) const { return NaiveOver(x, params_.d()); }

Vector SampleSupportPoint(int n, double eps, Rng& rng) {
  const int max_active = std::min(n, static_cast<int>(std::floor(1.0 / (eps * eps))));
  Vector x = Vector::Zero(n);
  if (max_active < 1) return SampleBall(n, rng);
  const int m = max_active >= 2 ? 2 + static_cast<int>(rng.Index(max_active - 1)) : 1;
  std::vector<int> slots(n);
  for (int i = 0; i < n; ++i) slots[i] = i;
  for (int k = 0; k < m; ++k) std::swap(slots[k], slots[k + rng.Index(n - k)]);
  // magnitudes eps + s * w_k with ||.|| = R, R uniform in [sqrt(m) eps, 1]
  Vector w(m);
  for (int k = 0; k < m; ++k) w(k) = rng.Uniform();
  const double lo = std::sqrt(static_cast<double>(m)) * eps;
  const double target = rng.Uniform(lo, 1.0);
  const double qa = w.squaredNorm();
  const double qb = 2.0 * eps * w.sum();
  const double qc = m * eps * eps - target * target;
  const double s = qa > 0.0 ? (-qb + std::sqrt(std::max(qb * qb - 4.0 * qa * qc, 0.0))) / (2.0 * qa)
                            : 0.0;
  for (int k = 0; k < m; ++k) {
    const double mag = eps + std::max(s, 0.0) * w(k);
    x(slots[k]) = rng.Uniform() < 0.5 ? -mag : mag;
  }
  const double norm = x.norm();
  if (norm > 1.0) x /= norm;
  return x;
}

namespace {

Vector ProjectToBall(Vector x) {
  constexpr double kRadius = 1.0 - 1e-14;
  const double norm = x.norm();
  if (norm > kRadius) x *= kRadius / norm;
  return x;
}

struct Candidate {
  double value;
  Vector point;
};

// Larger value wins; ties go to the lexicographically smaller point.
bool Better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return std::lexicographical_compare(a.point.data(), a.point.data() + a.point.size(),
                                      b.point.data(), b.point.data() + b.point.size());
}

double FiniteDifferenceResidual(const ScalarField& f, const VectorField& grad,
                                const Vector& x, double h) {
  const Vector g = grad(x);
  double worst = 0.0;
  Vector xp = x;
  for (int i = 0; i < x.size(); ++i) {
    xp(i) = x(i) + h;
    const double fp = f(xp);
    xp(i) = x(i) - h;
    const double fm = f(xp);
    xp(i) = x(i);
    worst = std::max(worst, std::abs((fp - fm) / (2.0 * h) - g(i)));
  }
  return worst;
}

}  // namespace

LipEstimate EstimateLip(const ScalarField& f, const VectorField& grad, int n,
                        const LipSamplerConfig& config) {
  if (n < 1) Fail(ErrorCode::kInvalidDimension, "estimate_lip needs n >= 1");
  Rng rng(config.seed);
  LipEstimate result{0.0, Vector::Zero(n), 0.0};

  // Gradient consistency spot check at interior points.
  {
    Rng check = rng.Split(0);
    constexpr double kStep = 1e-6;
    for (int k = 0; k < config.consistency_points; ++k) {
      Vector x = config.shell_eps > 0.0 && k % 2 == 0
                     ? SampleSupportPoint(n, config.shell_eps, check)
                     : SampleBall(n, check);
      x *= 0.98;
      const double res = FiniteDifferenceResidual(f, grad, x, kStep);
      result.max_fd_residual = std::max(result.max_fd_residual, res);
      if (res > config.consistency_tolerance) {
        Fail(ErrorCode::kCheckFailed, "estimate_lip: gradient inconsistent with function "
                                      "(finite-difference residual " +
                                          std::to_string(res) + ")");
      }
    }
  }

  std::vector<Candidate> pool;
  auto consider = [&](Vector x) {
    const double v = grad(x).norm();
    pool.push_back({v, std::move(x)});
  };
  {
    Rng s = rng.Split(1);
    for (int k = 0; k < config.ball_samples; ++k) consider(SampleBall(n, s));
  }
  {
    Rng s = rng.Split(2);
    for (int k = 0; k < config.sphere_samples; ++k) consider(0.999 * SampleSphere(n, s));
  }
  if (config.shell_eps > 0.0) {
    Rng s = rng.Split(3);
    for (int k = 0; k < config.shell_samples; ++k) {
      consider(SampleSupportPoint(n, config.shell_eps, s));
    }
  }
  if (pool.empty()) Fail(ErrorCode::kParameter, "estimate_lip: empty sample");

  const std::size_t starts =
      std::min<std::size_t>(pool.size(), static_cast<std::size_t>(std::max(config.ascent_starts, 0)));
  std::partial_sort(pool.begin(), pool.begin() + starts, pool.end(), Better);
  Candidate best = *std::min_element(pool.begin(), pool.end(), Better);

  Rng climb = rng.Split(4);
  for (std::size_t sidx = 0; sidx < starts; ++sidx) {
    Candidate cur = pool[sidx];
    double step = 0.05;
    for (int it = 0; it < config.ascent_iterations && step > 1e-9; ++it) {
      Vector proposal;
      if (it % 4 == 3) {
        proposal = ProjectToBall(cur.point * (1.0 + step));
      } else {
        proposal = ProjectToBall(cur.point + step * SampleSphere(n, climb));
      }
      const double v = grad(proposal).norm();
      if (v > cur.value) {
        cur = {v, std::move(proposal)};
        step *= 1.2;
      } else {
        step *= 0.85;
      }
    }
    if (Better(cur, best)) best = cur;
  }
  result.lower_bound = best.value;
  result.argmax = best.point;
  return result;
}

void WriteWitnessCsv(std::ostream& out, const WitnessField& field,
                     const std::vector<Vector>& points) {
  const int n = field.params().n();
  for (int i = 0; i < n; ++i) out << 'x' << (i + 1) << ',';
  out << "value,grad_norm\n";
  const auto old_precision = out.precision(12);
  for (const auto& x : points) {
    for (int i = 0; i < n; ++i) out << x(i) << ',';
    out << field.Psi(x) << ',' << field.GradPsi(x).norm() << '\n';
  }
  out.precision(old_precision);
}

}  // namespace lipproj
