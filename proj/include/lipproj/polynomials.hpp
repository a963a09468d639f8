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

#ifndef LIPPROJ_POLYNOMIALS_HPP_
#define LIPPROJ_POLYNOMIALS_HPP_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lipproj/geometry.hpp"

namespace lipproj {

// 2-homogeneous polynomial P(x) = x^T A x with A symmetric. The coefficient
// matrix is symmetrised on construction, so A == A^T holds bit for bit.
class Quadratic {
 public:
  explicit Quadratic(const Matrix& a);

  static Quadratic Zero(int dim);
  static Quadratic Diagonal(const Vector& diag);
  // Upper triangle in row-major order: a11, a12, ..., a1n, a22, ..., ann.
  static Quadratic FromUpperTriangle(int dim, const std::vector<double>& upper);

  int dim() const { return static_cast<int>(a_.rows()); }
  const Matrix& matrix() const { return a_; }
  std::vector<double> UpperTriangle() const;

  double operator()(const Vector& x) const;
  Vector Gradient(const Vector& x) const;  // 2 A x
  // Symmetric bilinear form (x, y) -> x^T A y.
  double Bilinear(const Vector& x, const Vector& y) const;

  Quadratic operator+(const Quadratic& other) const;
  Quadratic operator-(const Quadratic& other) const;
  Quadratic operator*(double s) const;

 private:
  Matrix a_;
};

inline Quadratic operator*(double s, const Quadratic& q) { return q * s; }

// sup over the closed ball of |P(x)|: the spectral radius of A.
double SupNorm(const Quadratic& p);

// Lipschitz norm of P restricted to the Euclidean ball, equal to 2 * SupNorm.
double LipNormOnBall(const Quadratic& p);

struct PolarizationReport {
  double sup_norm;
  double bilinear_norm;  // sup over unit x, y of |x^T A y|
  double ratio;          // bilinear_norm / sup_norm (1 for P = 0)
};

// Computes both norms by independent routes (eigenvalues vs singular values)
// and checks 1 <= ratio <= 2 with ratio == 1 to 1e-10 in the Euclidean case.
PolarizationReport PolarizationCheck(const Quadratic& p);

// The quadratic x -> P(Mx), i.e. matrix M^T A M.
Quadratic ComposeRotation(const Quadratic& p, const OrthogonalMatrix& m);

struct NormBasis {
  Quadratic n;    // x1^2 + ... + xn^2
  Quadratic n2;   // x1^2 + x2^2
  Quadratic n_d;  // x1^2 + ... + xd^2
};

NormBasis BasisN2Nd(int dim, int d);

// t^(k-2) * P(x) on R^dim x R.
class HomogenizedPolynomial {
 public:
  HomogenizedPolynomial(Quadratic base, int degree);

  int degree() const { return degree_; }
  const Quadratic& base() const { return base_; }

  double operator()(const Vector& x, double t) const;
  // Evaluation at t = 1 recovers the base quadratic.
  double Dehomogenized(const Vector& x) const { return (*this)(x, 1.0); }

 private:
  Quadratic base_;
  int degree_;
};

HomogenizedPolynomial Homogenize(const Quadratic& p, int k);

// {"dim": n, "upper": [row-major upper triangle]}
nlohmann::json ToJson(const Quadratic& p);
Quadratic QuadraticFromJson(const nlohmann::json& j);

}  // namespace lipproj

#endif  // LIPPROJ_POLYNOMIALS_HPP_
