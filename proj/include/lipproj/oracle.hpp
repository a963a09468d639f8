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

#ifndef LIPPROJ_ORACLE_HPP_
#define LIPPROJ_ORACLE_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lipproj/geometry.hpp"
#include "lipproj/polynomials.hpp"

namespace lipproj {

inline constexpr int kMaxNetPoints = 10000;
inline constexpr double kIdempotenceTolerance = 1e-10;

enum class NetScheme { kGrid, kShells, kRandom };

const char* NetSchemeName(NetScheme scheme);
NetScheme ParseNetScheme(const std::string& name);

// Finite pointed subset of the closed unit ball; points()[0] is the origin.
class FiniteBallNet {
 public:
  // Validates: nonempty, common dimension, first point zero, all points in
  // the ball, distinct points.
  explicit FiniteBallNet(std::vector<Vector> points);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<Vector>& points() const { return points_; }
  const Vector& point(int i) const { return points_.at(i); }
  double Distance(int i, int j) const { return (points_[i] - points_[j]).norm(); }
  // Full pairwise distance matrix.
  Matrix DistanceMatrix() const;
  // Index of the point within `tol` of x, or -1.
  int Find(const Vector& x, double tol = 1e-9) const;

 private:
  int dim_;
  std::vector<Vector> points_;
};

using NetPtr = std::shared_ptr<const FiniteBallNet>;

// grid: origin-centred lattice of spacing 2/resolution inside the ball.
// shells: spheres of radius j/resolution, j = 1..resolution; each shell holds
//   the cube-surface lattice with j subdivisions per edge projected radially,
//   so every shell is invariant under signed coordinate permutations.
// random: resolution^dim uniform ball points from `seed`.
// Throws kParameter for resolution < 2 or dim < 1, kResource above
// kMaxNetPoints points.
NetPtr BuildNet(int dim, int resolution, NetScheme scheme, std::uint64_t seed = 1);

class DiscreteFunction {
 public:
  // values(0) must be exactly zero.
  DiscreteFunction(NetPtr net, Vector values);

  const NetPtr& net() const { return net_; }
  const Vector& values() const { return values_; }

 private:
  NetPtr net_;
  Vector values_;
};

// Max over unordered pairs of |f(p) - f(q)| / d(p, q).
double DiscreteLipNorm(const DiscreteFunction& f);

DiscreteFunction RestrictQuadratic(const Quadratic& p, const NetPtr& net);

// Transportation norm of a balanced functional: the dual of the discrete
// Lipschitz norm.
double FreeNormOfFunctional(const Vector& weights, const FiniteBallNet& net);

// Q f = sum_b (W f)_b * basis_b, with W the s x P weight matrix and basis the
// P x s matrix of basis values on the net. Column 0 of W is irrelevant since
// f(0) = 0 and is stored as zero.
class DiscreteProjection {
 public:
  // Throws kContract if ||W * basis - I||_max > kIdempotenceTolerance.
  DiscreteProjection(NetPtr net, Matrix basis, Matrix weights);

  const NetPtr& net() const { return net_; }
  const Matrix& basis() const { return basis_; }
  const Matrix& weights() const { return weights_; }
  int rank() const { return static_cast<int>(basis_.cols()); }

  Vector Coefficients(const DiscreteFunction& f) const;
  DiscreteFunction Apply(const DiscreteFunction& f) const;
  double IdempotenceDefect() const;

 private:
  NetPtr net_;
  Matrix basis_;
  Matrix weights_;
};

// Columns are the restrictions of `quadratics` to the net.
Matrix RestrictedBasis(const std::vector<Quadratic>& quadratics, const FiniteBallNet& net);

struct ProjectionNorm {
  double norm = 0.0;
  int p = 0;
  int q = 0;
  // A maximizer in the discrete Lip_0 unit ball for the worst pair.
  Vector witness;
};

// Exact operator norm on Lip_0(net): max over pairs of the transportation
// norm of f -> (Qf(p) - Qf(q)) / d(p, q).
ProjectionNorm ProjectionOperatorNormDetailed(const DiscreteProjection& q);
double ProjectionOperatorNorm(const DiscreteProjection& q);

struct MinimizeOptions {
  int max_iterations = 400;
  double relative_gap = 1e-9;
  // Pair cuts added per iteration (largest pair values first).
  int cuts_per_iteration = 8;
};

struct MinimizedProjection {
  DiscreteProjection projection;
  double norm = 0.0;          // best upper bound found
  double lower_bound = 0.0;   // cutting-plane lower bound for the best restart
  std::vector<double> restart_norms;
  int iterations = 0;
};

// Minimizes the operator norm over projections onto span(basis). The norm is
// convex in the weights, so each restart runs a Kelley cutting-plane method on
// W = W0 + Y N^T (N spans the annihilator of the basis) with cuts taken from
// the transport duals; restarts differ in their random starting Y. Throws
// kParameter if the basis is rank deficient on the net.
MinimizedProjection MinimizeProjectionNorm(const NetPtr& net, const Matrix& basis, int restarts,
                                           std::uint64_t seed,
                                           const MinimizeOptions& options = {});

// All 2^n diagonal sign matrices.
std::vector<OrthogonalMatrix> SignFlipGroup(int dim);
// All n! coordinate permutations.
std::vector<OrthogonalMatrix> PermutationGroup(int dim);
// All 2^n n! signed permutations.
std::vector<OrthogonalMatrix> HyperoctahedralGroup(int dim);

// (1/|G|) sum_g (Q(f o g)) o g^{-1}. Throws kContract if `group` is not
// closed, the net is not G-invariant, or span(basis) is not G-invariant.
DiscreteProjection SymmetrizeDiscreteProjection(const DiscreteProjection& q,
                                                const std::vector<OrthogonalMatrix>& group);

// Point index permutation of g: g * point(i) == point(perm[i]).
std::vector<int> NetPermutation(const FiniteBallNet& net, const OrthogonalMatrix& g);

nlohmann::json NetToJson(const FiniteBallNet& net);
NetPtr NetFromJson(const nlohmann::json& j);
nlohmann::json ProjectionToJson(const DiscreteProjection& q);
DiscreteProjection ProjectionFromJson(const nlohmann::json& j, const NetPtr& net);

}  // namespace lipproj

#endif  // LIPPROJ_ORACLE_HPP_
