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

#include "lipproj/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lipproj/error.hpp"

namespace lipproj {

void RequireFinite(const Vector& x) {
  if (!x.allFinite()) Fail(ErrorCode::kDomain, "vector has non-finite entries");
}

void RequireInBall(const Vector& x) {
  RequireFinite(x);
  if (x.norm() > 1.0 + kBallSlack) {
    Fail(ErrorCode::kDomain,
         "point outside the closed unit ball (norm " + std::to_string(x.norm()) + ")");
  }
}

OrthogonalMatrix::OrthogonalMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    Fail(ErrorCode::kInvalidDimension, "orthogonal matrix must be square, dim >= 1");
  }
  if (!entries_.allFinite()) Fail(ErrorCode::kDomain, "non-finite matrix entry");
  const auto n = entries_.rows();
  const double defect = (entries_.transpose() * entries_ - Matrix::Identity(n, n)).norm();
  if (defect > kOrthogonalityTolerance) {
    Fail(ErrorCode::kContract, "matrix is not orthogonal, ||M^T M - I||_F = " +
                                   std::to_string(defect));
  }
}

OrthogonalMatrix OrthogonalMatrix::Identity(int dim) {
  if (dim < 1) Fail(ErrorCode::kInvalidDimension, "dim must be >= 1");
  return OrthogonalMatrix(Matrix::Identity(dim, dim), Unchecked{});
}

OrthogonalMatrix OrthogonalMatrix::Transpose() const {
  return OrthogonalMatrix(entries_.transpose(), Unchecked{});
}

OrthogonalMatrix OrthogonalMatrix::operator*(const OrthogonalMatrix& other) const {
  if (dim() != other.dim()) Fail(ErrorCode::kDimensionMismatch, "orthogonal product");
  return OrthogonalMatrix(entries_ * other.entries_, Unchecked{});
}

OrthogonalMatrix HaarSampleOrthogonal(int dim, Rng& rng) {
  if (dim < 1) Fail(ErrorCode::kInvalidDimension, "haar sample needs dim >= 1");
  Matrix g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) g(i, j) = rng.Normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return OrthogonalMatrix(std::move(q));
}

double SampleSo2(Rng& rng) {
  double theta = rng.Uniform() * 2.0 * std::numbers::pi;
  // Guard against rounding up to exactly 2*pi.
  if (theta >= 2.0 * std::numbers::pi) theta = 0.0;
  return theta;
}

OrthogonalMatrix CoordinateReflection(int dim, int k) {
  if (dim < 1) Fail(ErrorCode::kInvalidDimension, "dim must be >= 1");
  if (k < 1 || k > dim) Fail(ErrorCode::kIndex, "reflection index out of range");
  Matrix m = Matrix::Identity(dim, dim);
  m(k - 1, k - 1) = -1.0;
  return OrthogonalMatrix(std::move(m));
}

OrthogonalMatrix CoordinateSwap(int dim, int i, int j) {
  if (dim < 1) Fail(ErrorCode::kInvalidDimension, "dim must be >= 1");
  if (i < 1 || j > dim || i >= j) Fail(ErrorCode::kIndex, "swap needs 1 <= i < j <= dim");
  Matrix m = Matrix::Identity(dim, dim);
  m(i - 1, i - 1) = 0.0;
  m(j - 1, j - 1) = 0.0;
  m(i - 1, j - 1) = 1.0;
  m(j - 1, i - 1) = 1.0;
  return OrthogonalMatrix(std::move(m));
}

OrthogonalMatrix EmbedSo2Rotation(int dim, double theta) {
  if (dim < 2) Fail(ErrorCode::kInvalidDimension, "plane rotation needs dim >= 2");
  Matrix m = Matrix::Identity(dim, dim);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  m(0, 0) = c;
  m(0, 1) = -s;
  m(1, 0) = s;
  m(1, 1) = c;
  return OrthogonalMatrix(std::move(m));
}

Vector Apply(const OrthogonalMatrix& m, const Vector& x) {
  if (m.dim() != x.size()) Fail(ErrorCode::kDimensionMismatch, "apply: dimension mismatch");
  return m.entries() * x;
}

Vector SampleSphere(int dim, Rng& rng) {
  if (dim < 1) Fail(ErrorCode::kInvalidDimension, "dim must be >= 1");
  Vector x(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) x(i) = rng.Normal();
    norm = x.norm();
  } while (norm == 0.0);
  return x / norm;
}

Vector SampleBall(int dim, Rng& rng) {
  Vector x = SampleSphere(dim, rng);
  return x * std::pow(rng.Uniform(), 1.0 / dim);
}

}  // namespace lipproj
