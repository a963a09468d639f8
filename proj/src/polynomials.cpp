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

#include "lipproj/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lipproj/error.hpp"

namespace lipproj {

namespace {

void RequireSameDim(int a, long b, const char* what) {
  if (a != b) Fail(ErrorCode::kDimensionMismatch, std::string(what) + ": dimension mismatch");
}

}  // namespace

Quadratic::Quadratic(const Matrix& a) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    Fail(ErrorCode::kInvalidDimension, "quadratic needs a square matrix with dim >= 1");
  }
  if (!a.allFinite()) Fail(ErrorCode::kDomain, "quadratic has non-finite coefficients");
  a_ = 0.5 * (a + a.transpose());
}

Quadratic Quadratic::Zero(int dim) {
  if (dim < 1) Fail(ErrorCode::kInvalidDimension, "dim must be >= 1");
  return Quadratic(Matrix::Zero(dim, dim));
}

Quadratic Quadratic::Diagonal(const Vector& diag) {
  return Quadratic(Matrix(diag.asDiagonal()));
}

Quadratic Quadratic::FromUpperTriangle(int dim, const std::vector<double>& upper) {
  if (dim < 1) Fail(ErrorCode::kInvalidDimension, "dim must be >= 1");
  const std::size_t expected = static_cast<std::size_t>(dim) * (dim + 1) / 2;
  if (upper.size() != expected) {
    Fail(ErrorCode::kDimensionMismatch, "upper triangle needs " + std::to_string(expected) +
                                            " entries, got " + std::to_string(upper.size()));
  }
  Matrix a(dim, dim);
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      a(i, j) = upper[k];
      a(j, i) = upper[k];
      ++k;
    }
  }
  return Quadratic(a);
}

std::vector<double> Quadratic::UpperTriangle() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(dim()) * (dim() + 1) / 2);
  for (int i = 0; i < dim(); ++i) {
    for (int j = i; j < dim(); ++j) out.push_back(a_(i, j));
  }
  return out;
}

double Quadratic::operator()(const Vector& x) const {
  RequireSameDim(dim(), x.size(), "eval");
  return x.dot(a_ * x);
}

Vector Quadratic::Gradient(const Vector& x) const {
  RequireSameDim(dim(), x.size(), "gradient");
  return 2.0 * (a_ * x);
}

double Quadratic::Bilinear(const Vector& x, const Vector& y) const {
  RequireSameDim(dim(), x.size(), "bilinear");
  RequireSameDim(dim(), y.size(), "bilinear");
  return x.dot(a_ * y);
}

Quadratic Quadratic::operator+(const Quadratic& other) const {
  RequireSameDim(dim(), other.dim(), "sum");
  return Quadratic(a_ + other.a_);
}

Quadratic Quadratic::operator-(const Quadratic& other) const {
  RequireSameDim(dim(), other.dim(), "difference");
  return Quadratic(a_ - other.a_);
}

Quadratic Quadratic::operator*(double s) const { return Quadratic(s * a_); }

double SupNorm(const Quadratic& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(p.matrix(), Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) Fail(ErrorCode::kDomain, "eigensolver failed");
  const Vector& ev = eig.eigenvalues();
  return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

double LipNormOnBall(const Quadratic& p) { return 2.0 * SupNorm(p); }

PolarizationReport PolarizationCheck(const Quadratic& p) {
  PolarizationReport r{};
  r.sup_norm = SupNorm(p);
  Eigen::JacobiSVD<Matrix> svd(p.matrix());
  r.bilinear_norm = svd.singularValues()(0);
  const double scale = std::max(r.sup_norm, r.bilinear_norm);
  r.ratio = scale == 0.0 ? 1.0 : r.bilinear_norm / r.sup_norm;
  // Degree 2: 1 <= ratio <= 2^2 / 2! = 2 in any normed space, and the two
  // norms coincide on a Hilbert space.
  if (r.ratio < 1.0 - 1e-10 || r.ratio > 2.0) {
    Fail(ErrorCode::kCheckFailed, "polarization ratio outside [1, 2]");
  }
  if (std::abs(r.ratio - 1.0) > 1e-10) {
    Fail(ErrorCode::kCheckFailed, "Euclidean polarization ratio differs from 1");
  }
  return r;
}

Quadratic ComposeRotation(const Quadratic& p, const OrthogonalMatrix& m) {
  RequireSameDim(p.dim(), m.dim(), "compose_rotation");
  return Quadratic(m.entries().transpose() * p.matrix() * m.entries());
}

NormBasis BasisN2Nd(int dim, int d) {
  if (dim < 2 || d < 2 || d > dim) {
    Fail(ErrorCode::kParameter, "basis needs 2 <= d <= dim");
  }
  Vector n = Vector::Ones(dim);
  Vector n2 = Vector::Zero(dim);
  n2.head(2).setOnes();
  Vector nd = Vector::Zero(dim);
  nd.head(d).setOnes();
  return NormBasis{Quadratic::Diagonal(n), Quadratic::Diagonal(n2), Quadratic::Diagonal(nd)};
}

HomogenizedPolynomial::HomogenizedPolynomial(Quadratic base, int degree)
    : base_(std::move(base)), degree_(degree) {
  if (degree < 2) Fail(ErrorCode::kParameter, "homogenization degree must be >= 2");
}

double HomogenizedPolynomial::operator()(const Vector& x, double t) const {
  double factor = 1.0;
  for (int i = 0; i < degree_ - 2; ++i) factor *= t;
  return factor * base_(x);
}

HomogenizedPolynomial Homogenize(const Quadratic& p, int k) {
  return HomogenizedPolynomial(p, k);
}

nlohmann::json ToJson(const Quadratic& p) {
  return nlohmann::json{{"dim", p.dim()}, {"upper", p.UpperTriangle()}};
}

Quadratic QuadraticFromJson(const nlohmann::json& j) {
  try {
    return Quadratic::FromUpperTriangle(j.at("dim").get<int>(),
                                        j.at("upper").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("quadratic json: ") + e.what());
  }
}

}  // namespace lipproj
