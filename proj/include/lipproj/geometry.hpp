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

#ifndef LIPPROJ_GEOMETRY_HPP_
#define LIPPROJ_GEOMETRY_HPP_

#include <Eigen/Dense>

#include "lipproj/rng.hpp"

namespace lipproj {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kOrthogonalityTolerance = 1e-10;
inline constexpr double kDeterminantTolerance = 1e-8;
// Points may round slightly outside the closed unit ball.
inline constexpr double kBallSlack = 1e-12;

// Throws kDomain unless every entry of `x` is finite.
void RequireFinite(const Vector& x);
// Throws kDomain unless ||x||_2 <= 1 + kBallSlack.
void RequireInBall(const Vector& x);

// An element of the orthogonal group O_dim. Construction validates
// ||M^T M - I||_F <= kOrthogonalityTolerance.
class OrthogonalMatrix {
 public:
  explicit OrthogonalMatrix(Matrix entries);

  static OrthogonalMatrix Identity(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double Determinant() const { return entries_.determinant(); }

  OrthogonalMatrix Transpose() const;
  OrthogonalMatrix operator*(const OrthogonalMatrix& other) const;

 private:
  struct Unchecked {};
  OrthogonalMatrix(Matrix entries, Unchecked) : entries_(std::move(entries)) {}

  Matrix entries_;
};

// Haar-distributed element of O_dim: QR of a Gaussian matrix with the
// columns of Q multiplied by sign(R_ii).
OrthogonalMatrix HaarSampleOrthogonal(int dim, Rng& rng);

// Uniform angle on [0, 2*pi).
double SampleSo2(Rng& rng);

// diag(1, ..., -1 at position k, ..., 1); k is 1-based.
OrthogonalMatrix CoordinateReflection(int dim, int k);

// Permutation matrix exchanging coordinates i < j (1-based).
OrthogonalMatrix CoordinateSwap(int dim, int i, int j);

// Rotation by theta in the (x1, x2) plane, identity on the remaining axes.
OrthogonalMatrix EmbedSo2Rotation(int dim, double theta);

Vector Apply(const OrthogonalMatrix& m, const Vector& x);

// Uniform point in the closed unit ball / on the unit sphere of R^dim.
Vector SampleBall(int dim, Rng& rng);
Vector SampleSphere(int dim, Rng& rng);

}  // namespace lipproj

#endif  // LIPPROJ_GEOMETRY_HPP_
