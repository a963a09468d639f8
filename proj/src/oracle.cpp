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

#include "lipproj/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "lipproj/error.hpp"
#include "lipproj/linear_program.hpp"
#include "lipproj/rng.hpp"
#include "lipproj/transport.hpp"

namespace lipproj {

const char* NetSchemeName(NetScheme scheme) {
  switch (scheme) {
    case NetScheme::kGrid:
      return "grid";
    case NetScheme::kShells:
      return "shells";
    case NetScheme::kRandom:
      return "random";
  }
  return "unknown";
}

NetScheme ParseNetScheme(const std::string& name) {
  if (name == "grid") return NetScheme::kGrid;
  if (name == "shells" || name == "sphere-shells") return NetScheme::kShells;
  if (name == "random") return NetScheme::kRandom;
  Fail(ErrorCode::kParameter, "unknown net scheme '" + name + "'");
}

FiniteBallNet::FiniteBallNet(std::vector<Vector> points) : points_(std::move(points)) {
  if (points_.empty()) Fail(ErrorCode::kParameter, "net: no points");
  dim_ = static_cast<int>(points_[0].size());
  if (dim_ < 1) Fail(ErrorCode::kInvalidDimension, "net: dimension must be positive");
  for (const Vector& x : points_) {
    if (x.size() != dim_) Fail(ErrorCode::kDimensionMismatch, "net: mixed dimensions");
    RequireFinite(x);
    RequireInBall(x);
  }
  if (points_[0].squaredNorm() != 0.0) {
    Fail(ErrorCode::kContract, "net: first point must be the origin");
  }
  // Distinctness via lexicographic sort.
  std::vector<int> order(points_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [this](int a, int b) {
    return std::lexicographical_compare(points_[a].data(), points_[a].data() + dim_,
                                        points_[b].data(), points_[b].data() + dim_);
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (points_[order[k]] == points_[order[k - 1]]) {
      Fail(ErrorCode::kContract, "net: duplicate points");
    }
  }
}

Matrix FiniteBallNet::DistanceMatrix() const {
  const int p = size();
  Matrix d = Matrix::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      d(i, j) = d(j, i) = Distance(i, j);
    }
  }
  return d;
}

int FiniteBallNet::Find(const Vector& x, double tol) const {
  if (x.size() != dim_) return -1;
  for (int i = 0; i < size(); ++i) {
    if ((points_[i] - x).norm() <= tol) return i;
  }
  return -1;
}

namespace {

void ResourceFail(int dim, int resolution) {
  Fail(ErrorCode::kResource, "net with dim " + std::to_string(dim) + " and resolution " +
                                 std::to_string(resolution) + " exceeds " +
                                 std::to_string(kMaxNetPoints) + " points");
}

// Lattice points k * spacing with |k_i| <= half and norm <= 1, in
// lexicographic order of k.
void EnumerateGrid(int dim, int half, double spacing, std::vector<Vector>* out) {
  std::vector<int> k(dim, -half);
  Vector x(dim);
  // Odometer with pruning on the partial squared norm.
  std::function<void(int, double)> rec = [&](int axis, double partial) {
    if (axis == dim) {
      if (partial == 0.0) return;  // origin is inserted first by the caller
      out->push_back(x);
      if (static_cast<int>(out->size()) >= kMaxNetPoints) {
        Fail(ErrorCode::kResource, "grid net exceeds " + std::to_string(kMaxNetPoints) + " points");
      }
      return;
    }
    for (int i = -half; i <= half; ++i) {
      const double c = i * spacing;
      const double s = partial + c * c;
      if (s > 1.0 + kBallSlack) continue;
      x(axis) = c;
      rec(axis + 1, s);
    }
  };
  rec(0, 0.0);
}

}  // namespace

NetPtr BuildNet(int dim, int resolution, NetScheme scheme, std::uint64_t seed) {
  if (dim < 1) Fail(ErrorCode::kInvalidDimension, "net: dimension must be >= 1");
  if (resolution < 2) Fail(ErrorCode::kParameter, "net: resolution must be >= 2");
  std::vector<Vector> pts;
  pts.push_back(Vector::Zero(dim));
  switch (scheme) {
    case NetScheme::kGrid: {
      EnumerateGrid(dim, resolution / 2, 2.0 / resolution, &pts);
      break;
    }
    case NetScheme::kShells: {
      double count = 1.0;
      for (int j = 1; j <= resolution; ++j) {
        count += dim == 1 ? 2.0 : std::pow(j + 1.0, dim) - std::pow(j - 1.0, dim);
      }
      if (count > kMaxNetPoints) ResourceFail(dim, resolution);
      for (int j = 1; j <= resolution; ++j) {
        const double radius = static_cast<double>(j) / resolution;
        if (dim == 1) {
          pts.push_back(Vector::Constant(1, -radius));
          pts.push_back(Vector::Constant(1, radius));
          continue;
        }
        std::vector<int> idx(dim, 0);
        while (true) {
          bool on_surface = false;
          Vector z(dim);
          for (int a = 0; a < dim; ++a) {
            z(a) = -1.0 + 2.0 * idx[a] / j;
            on_surface |= idx[a] == 0 || idx[a] == j;
          }
          if (on_surface) pts.push_back(radius * z / z.norm());
          int a = dim - 1;
          while (a >= 0 && ++idx[a] > j) idx[a--] = 0;
          if (a < 0) break;
        }
      }
      break;
    }
    case NetScheme::kRandom: {
      const double count = std::pow(static_cast<double>(resolution), dim);
      if (count + 1.0 > kMaxNetPoints) ResourceFail(dim, resolution);
      Rng rng(seed, 0x6e6574);
      for (int i = 0; i < static_cast<int>(count); ++i) pts.push_back(SampleBall(dim, rng));
      break;
    }
  }
  return std::make_shared<const FiniteBallNet>(std::move(pts));
}

DiscreteFunction::DiscreteFunction(NetPtr net, Vector values)
    : net_(std::move(net)), values_(std::move(values)) {
  if (!net_) Fail(ErrorCode::kParameter, "discrete function: null net");
  if (values_.size() != net_->size()) {
    Fail(ErrorCode::kDimensionMismatch, "discrete function: value count differs from net size");
  }
  if (values_(0) != 0.0) {
    Fail(ErrorCode::kContract, "discrete function must vanish at the base point");
  }
}

double DiscreteLipNorm(const DiscreteFunction& f) {
  const FiniteBallNet& net = *f.net();
  const Vector& v = f.values();
  double best = 0.0;
  for (int i = 0; i < net.size(); ++i) {
    for (int j = i + 1; j < net.size(); ++j) {
      best = std::max(best, std::abs(v(i) - v(j)) / net.Distance(i, j));
    }
  }
  return best;
}

DiscreteFunction RestrictQuadratic(const Quadratic& p, const NetPtr& net) {
  if (!net) Fail(ErrorCode::kParameter, "restrict: null net");
  if (p.dim() != net->dim()) {
    Fail(ErrorCode::kDimensionMismatch, "restrict: quadratic and net dimensions differ");
  }
  Vector v(net->size());
  for (int i = 0; i < net->size(); ++i) v(i) = p(net->point(i));
  v(0) = 0.0;  // already exact; guards against -0.0 style surprises
  return DiscreteFunction(net, std::move(v));
}

double FreeNormOfFunctional(const Vector& weights, const FiniteBallNet& net) {
  if (weights.size() != net.size()) {
    Fail(ErrorCode::kDimensionMismatch, "free norm: weight count differs from net size");
  }
  return SolveTransport(net.DistanceMatrix(), weights).cost;
}

Matrix RestrictedBasis(const std::vector<Quadratic>& quadratics, const FiniteBallNet& net) {
  Matrix b(net.size(), static_cast<int>(quadratics.size()));
  for (std::size_t k = 0; k < quadratics.size(); ++k) {
    if (quadratics[k].dim() != net.dim()) {
      Fail(ErrorCode::kDimensionMismatch, "basis quadratic dimension differs from net");
    }
    for (int i = 0; i < net.size(); ++i) b(i, static_cast<int>(k)) = quadratics[k](net.point(i));
  }
  return b;
}

DiscreteProjection::DiscreteProjection(NetPtr net, Matrix basis, Matrix weights)
    : net_(std::move(net)), basis_(std::move(basis)), weights_(std::move(weights)) {
  if (!net_) Fail(ErrorCode::kParameter, "projection: null net");
  if (basis_.rows() != net_->size() || weights_.cols() != net_->size() ||
      weights_.rows() != basis_.cols()) {
    Fail(ErrorCode::kDimensionMismatch, "projection: inconsistent basis/weight shapes");
  }
  if (basis_.cols() > 0 && basis_.row(0).cwiseAbs().maxCoeff() != 0.0) {
    Fail(ErrorCode::kContract, "projection: basis functions must vanish at the base point");
  }
  weights_.col(0).setZero();
  const double defect = IdempotenceDefect();
  if (!(defect <= kIdempotenceTolerance)) {
    Fail(ErrorCode::kContract,
         "projection is not idempotent (defect " + std::to_string(defect) + ")");
  }
}

double DiscreteProjection::IdempotenceDefect() const {
  if (basis_.cols() == 0) return 0.0;
  const Matrix e = weights_ * basis_ - Matrix::Identity(basis_.cols(), basis_.cols());
  return e.cwiseAbs().maxCoeff();
}

Vector DiscreteProjection::Coefficients(const DiscreteFunction& f) const {
  if (f.values().size() != net_->size()) {
    Fail(ErrorCode::kDimensionMismatch, "projection: function lives on another net");
  }
  return weights_ * f.values();
}

DiscreteFunction DiscreteProjection::Apply(const DiscreteFunction& f) const {
  Vector v = basis_ * Coefficients(f);
  v(0) = 0.0;
  return DiscreteFunction(net_, std::move(v));
}

namespace {

// Pair functional as weights over all points, balanced through node 0.
Vector PairFunctional(const Matrix& basis, const Matrix& weights, int p, int q, double d) {
  Vector w = ((basis.row(p) - basis.row(q)) * weights).transpose() / d;
  w(0) = 0.0;
  w(0) = -w.sum();
  return w;
}

struct PairValue {
  double value;
  int p;
  int q;
  Vector witness;
};

std::vector<PairValue> AllPairValues(const Matrix& basis, const Matrix& weights,
                                     const Matrix& dist) {
  const int n = static_cast<int>(dist.rows());
  std::vector<PairValue> out;
  out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const Vector w = PairFunctional(basis, weights, p, q, dist(p, q));
      TransportSolution t = SolveTransport(dist, w);
      out.push_back({t.cost, p, q, std::move(t.potential)});
    }
  }
  return out;
}

}  // namespace

ProjectionNorm ProjectionOperatorNormDetailed(const DiscreteProjection& q) {
  const FiniteBallNet& net = *q.net();
  if (net.size() < 2) Fail(ErrorCode::kParameter, "projection norm: net needs >= 2 points");
  const Matrix dist = net.DistanceMatrix();
  ProjectionNorm best;
  best.witness = Vector::Zero(net.size());
  best.norm = -1.0;
  for (int p = 0; p < net.size(); ++p) {
    for (int r = p + 1; r < net.size(); ++r) {
      const Vector w = PairFunctional(q.basis(), q.weights(), p, r, dist(p, r));
      TransportSolution t = SolveTransport(dist, w);
      if (t.cost > best.norm) {
        best.norm = t.cost;
        best.p = p;
        best.q = r;
        best.witness = std::move(t.potential);
      }
    }
  }
  return best;
}

double ProjectionOperatorNorm(const DiscreteProjection& q) {
  return ProjectionOperatorNormDetailed(q).norm;
}

namespace {

struct Cut {
  double constant;
  Vector gradient;  // over vec(Y), row-major s x r
};

struct CuttingPlaneRun {
  Matrix best_weights;
  double upper = 0.0;
  double lower = 0.0;
  int iterations = 0;
};

CuttingPlaneRun RunCuttingPlane(const Matrix& basis, const Matrix& dist, const Matrix& w0,
                                const Matrix& null_basis, Vector y,
                                const MinimizeOptions& options) {
  const int s = static_cast<int>(w0.rows());
  const int r = static_cast<int>(null_basis.cols());
  const int nvar = s * r;
  const int npts = static_cast<int>(dist.rows());

  auto weights_of = [&](const Vector& yv) {
    Matrix full = Matrix::Zero(s, npts);
    Matrix yy = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                               Eigen::RowMajor>>(yv.data(), s, r);
    full.rightCols(npts - 1) = w0 + yy * null_basis.transpose();
    return full;
  };

  CuttingPlaneRun run;
  run.upper = std::numeric_limits<double>::infinity();
  run.lower = 0.0;
  // Box-step variant of Kelley's method: the master LP is restricted to a box
  // of half-width `radius` around the best point so far. A master solution
  // strictly inside the box minimizes the (convex) cutting-plane model
  // globally, so its value is a certified lower bound.
  const double radius = 2.0 * std::max(1.0, w0.cwiseAbs().maxCoeff());
  Vector center = y;
  std::vector<Cut> cuts;

  for (int it = 0; it < options.max_iterations; ++it) {
    run.iterations = it + 1;
    const Matrix w = weights_of(y);
    std::vector<PairValue> vals = AllPairValues(basis, w, dist);
    std::sort(vals.begin(), vals.end(), [](const PairValue& a, const PairValue& b) {
      if (a.value != b.value) return a.value > b.value;
      return std::make_pair(a.p, a.q) < std::make_pair(b.p, b.q);
    });
    const double current = vals.front().value;
    if (current < run.upper) {
      run.upper = current;
      run.best_weights = w;
      center = y;
    }
    if (nvar == 0) {
      run.lower = current;
      break;
    }
    if (run.upper - run.lower <= options.relative_gap * run.upper) break;
    const int add = std::min<int>(options.cuts_per_iteration, static_cast<int>(vals.size()));
    for (int k = 0; k < add; ++k) {
      const PairValue& pv = vals[k];
      const Vector g = (basis.row(pv.p) - basis.row(pv.q)).transpose() / dist(pv.p, pv.q);
      const Vector f = pv.witness.tail(npts - 1);
      const Vector nf = null_basis.transpose() * f;
      Cut c;
      c.constant = g.dot(w0 * f);
      c.gradient.resize(nvar);
      for (int a = 0; a < s; ++a) c.gradient.segment(a * r, r) = g(a) * nf;
      const double tol = 1e-12 * (1.0 + std::abs(c.constant) + c.gradient.lpNorm<Eigen::Infinity>());
      const bool duplicate = std::any_of(cuts.begin(), cuts.end(), [&](const Cut& o) {
        return std::abs(o.constant - c.constant) <= tol &&
               (o.gradient - c.gradient).lpNorm<Eigen::Infinity>() <= tol;
      });
      if (!duplicate) cuts.push_back(std::move(c));
    }

    // Master: minimize t over u in [0, 2 radius]^nvar, t >= 0, with
    // y = center - radius + u, subject to the cuts. With one row per cut and
    // few variables it is solved through its dual (one row per variable);
    // the master solution is read off the dual's multipliers.
    const int nv = nvar + 1;
    const int ncut = static_cast<int>(cuts.size());
    const int rows = ncut + nvar;
    Matrix a = Matrix::Zero(rows, nv);
    Vector b = Vector::Zero(rows);
    const Vector corner = center.array() - radius;
    for (int k = 0; k < ncut; ++k) {
      a.row(k).head(nvar) = cuts[k].gradient.transpose();
      a(k, nvar) = -1.0;
      b(k) = -cuts[k].constant - cuts[k].gradient.dot(corner);
    }
    for (int v = 0; v < nvar; ++v) {
      a(ncut + v, v) = 1.0;
      b(ncut + v) = 2.0 * radius;
    }
    LinearProgram dual;
    dual.c = b;
    dual.a_ub = -a.transpose();
    dual.b_ub = Vector::Zero(nv);
    dual.b_ub(nvar) = 1.0;
    dual.a_eq = Matrix(0, rows);
    dual.b_eq = Vector(0);
    // Master solved through its dual (one row per variable plus t).
    const LpSolution dsol = SolveLinearProgram(dual);
    if (dsol.status != LpStatus::kOptimal) {
      Fail(ErrorCode::kContract, "cutting-plane master LP did not reach optimality (status " + std::to_string(static_cast<int>(dsol.status)) + ")");
    }
    const Vector x = (-dsol.duals).cwiseMax(0.0);
    LpSolution sol;
    sol.x = x;
    sol.objective = -dsol.objective;
    y = corner + sol.x.head(nvar);
    if ((y - center).cwiseAbs().maxCoeff() < radius * (1.0 - 1e-9)) {
      run.lower = std::max(run.lower, sol.objective);
    }
  }
  return run;
}

}  // namespace

MinimizedProjection MinimizeProjectionNorm(const NetPtr& net, const Matrix& basis, int restarts,
                                           std::uint64_t seed, const MinimizeOptions& options) {
  if (!net) Fail(ErrorCode::kParameter, "minimize: null net");
  if (restarts < 1) Fail(ErrorCode::kParameter, "minimize: restarts must be >= 1");
  const int npts = net->size();
  const int s = static_cast<int>(basis.cols());
  if (basis.rows() != npts) Fail(ErrorCode::kDimensionMismatch, "minimize: basis rows != net size");
  if (npts < 2) Fail(ErrorCode::kParameter, "minimize: net needs >= 2 points");
  if (s < 1) Fail(ErrorCode::kParameter, "minimize: empty basis");
  const Matrix bred = basis.bottomRows(npts - 1);
  Eigen::JacobiSVD<Matrix> svd(bred);
  const Vector sv = svd.singularValues();
  if (s > npts - 1 || sv(s - 1) <= 1e-10 * std::max(1.0, sv(0))) {
    Fail(ErrorCode::kParameter, "minimize: basis is rank deficient on the net (net too coarse)");
  }
  const Matrix w0 = (bred.transpose() * bred).ldlt().solve(bred.transpose());
  const Matrix qfull = bred.householderQr().householderQ() * Matrix::Identity(npts - 1, npts - 1);
  const Matrix null_basis = qfull.rightCols(npts - 1 - s);
  const int nvar = s * static_cast<int>(null_basis.cols());
  const Matrix dist = net->DistanceMatrix();

  Rng rng(seed, 0x6f7261636c65);
  MinimizedProjection best{DiscreteProjection(net, basis, [&] {
                             Matrix w = Matrix::Zero(s, npts);
                             w.rightCols(npts - 1) = w0;
                             return w;
                           }()),
                           std::numeric_limits<double>::infinity(), 0.0, {}, 0};
  const double scale = w0.cwiseAbs().maxCoeff();
  for (int k = 0; k < restarts; ++k) {
    Vector y = Vector::Zero(nvar);
    if (k > 0) {
      for (int v = 0; v < nvar; ++v) y(v) = scale * rng.Normal();
    }
    CuttingPlaneRun run = RunCuttingPlane(basis, dist, w0, null_basis, y, options);
    best.restart_norms.push_back(run.upper);
    best.iterations += run.iterations;
    if (run.upper < best.norm) {
      best.norm = run.upper;
      best.lower_bound = run.lower;
      best.projection = DiscreteProjection(net, basis, run.best_weights);
    }
  }
  return best;
}

std::vector<OrthogonalMatrix> SignFlipGroup(int dim) {
  if (dim < 1 || dim > 16) Fail(ErrorCode::kInvalidDimension, "sign-flip group: dim in [1, 16]");
  std::vector<OrthogonalMatrix> out;
  for (int mask = 0; mask < (1 << dim); ++mask) {
    Vector d(dim);
    for (int a = 0; a < dim; ++a) d(a) = (mask >> a) & 1 ? -1.0 : 1.0;
    out.emplace_back(Matrix(d.asDiagonal()));
  }
  return out;
}

std::vector<OrthogonalMatrix> PermutationGroup(int dim) {
  if (dim < 1 || dim > 8) Fail(ErrorCode::kInvalidDimension, "permutation group: dim in [1, 8]");
  std::vector<int> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<OrthogonalMatrix> out;
  do {
    Matrix m = Matrix::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) m(perm[a], a) = 1.0;
    out.emplace_back(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<OrthogonalMatrix> HyperoctahedralGroup(int dim) {
  std::vector<OrthogonalMatrix> out;
  for (const OrthogonalMatrix& s : SignFlipGroup(dim)) {
    for (const OrthogonalMatrix& p : PermutationGroup(dim)) out.push_back(s * p);
  }
  return out;
}

std::vector<int> NetPermutation(const FiniteBallNet& net, const OrthogonalMatrix& g) {
  if (g.dim() != net.dim()) Fail(ErrorCode::kDimensionMismatch, "group element dimension");
  std::vector<int> perm(net.size());
  std::vector<char> hit(net.size(), 0);
  for (int i = 0; i < net.size(); ++i) {
    const int j = net.Find(Apply(g, net.point(i)));
    if (j < 0 || hit[j]) Fail(ErrorCode::kContract, "net is not invariant under the group");
    hit[j] = 1;
    perm[i] = j;
  }
  return perm;
}

DiscreteProjection SymmetrizeDiscreteProjection(const DiscreteProjection& q,
                                                const std::vector<OrthogonalMatrix>& group) {
  if (group.empty()) Fail(ErrorCode::kParameter, "symmetrize: empty group");
  for (const OrthogonalMatrix& a : group) {
    for (const OrthogonalMatrix& b : group) {
      const Matrix ab = (a * b).entries();
      const bool found = std::any_of(group.begin(), group.end(), [&](const OrthogonalMatrix& c) {
        return (c.entries() - ab).cwiseAbs().maxCoeff() <= 1e-12;
      });
      if (!found) Fail(ErrorCode::kContract, "symmetrize: element list is not a group");
    }
  }
  const FiniteBallNet& net = *q.net();
  const Matrix& b = q.basis();
  const int npts = net.size();
  const int s = q.rank();
  const auto qr = b.colPivHouseholderQr();
  Matrix acc = Matrix::Zero(s, npts);
  for (const OrthogonalMatrix& g : group) {
    const std::vector<int> perm = NetPermutation(net, g);
    // (f o g)_i = f_{perm[i]};  (h o g^{-1})_{perm[i]} = h_i.
    Matrix pg = Matrix::Zero(npts, npts);
    for (int i = 0; i < npts; ++i) pg(i, perm[i]) = 1.0;
    const Matrix pginv = pg.transpose();
    const Matrix moved = pginv * b;
    const Matrix rg = qr.solve(moved);
    const double resid = (b * rg - moved).cwiseAbs().maxCoeff();
    if (resid > 1e-9 * std::max(1.0, b.cwiseAbs().maxCoeff())) {
      Fail(ErrorCode::kContract, "symmetrize: subspace is not invariant under the group");
    }
    acc += rg * q.weights() * pg;
  }
  acc /= static_cast<double>(group.size());
  return DiscreteProjection(q.net(), b, acc);
}

nlohmann::json NetToJson(const FiniteBallNet& net) {
  nlohmann::json pts = nlohmann::json::array();
  for (const Vector& x : net.points()) {
    pts.push_back(std::vector<double>(x.data(), x.data() + x.size()));
  }
  return {{"dim", net.dim()}, {"points", pts}};
}

NetPtr NetFromJson(const nlohmann::json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    std::vector<Vector> pts;
    for (const auto& row : j.at("points")) {
      const auto v = row.get<std::vector<double>>();
      if (static_cast<int>(v.size()) != dim) {
        Fail(ErrorCode::kParse, "net JSON: point of wrong dimension");
      }
      pts.push_back(Eigen::Map<const Vector>(v.data(), dim));
    }
    return std::make_shared<const FiniteBallNet>(std::move(pts));
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("net JSON: ") + e.what());
  }
}

namespace {

nlohmann::json MatrixToJson(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<double> r(m.cols());
    for (int k = 0; k < m.cols(); ++k) r[k] = m(i, k);
    rows.push_back(r);
  }
  return rows;
}

Matrix MatrixFromJson(const nlohmann::json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    Fail(ErrorCode::kParse, "projection JSON: wrong row count");
  }
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto r = j[i].get<std::vector<double>>();
    if (static_cast<int>(r.size()) != cols) Fail(ErrorCode::kParse, "projection JSON: ragged row");
    for (int k = 0; k < cols; ++k) m(i, k) = r[k];
  }
  return m;
}

}  // namespace

nlohmann::json ProjectionToJson(const DiscreteProjection& q) {
  return {{"points", q.net()->size()},
          {"rank", q.rank()},
          {"basis", MatrixToJson(q.basis())},
          {"weights", MatrixToJson(q.weights())}};
}

DiscreteProjection ProjectionFromJson(const nlohmann::json& j, const NetPtr& net) {
  if (!net) Fail(ErrorCode::kParameter, "projection JSON: null net");
  try {
    const int p = j.at("points").get<int>();
    const int s = j.at("rank").get<int>();
    if (p != net->size()) Fail(ErrorCode::kParse, "projection JSON: net size mismatch");
    return DiscreteProjection(net, MatrixFromJson(j.at("basis"), p, s),
                              MatrixFromJson(j.at("weights"), s, p));
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("projection JSON: ") + e.what());
  }
}

}  // namespace lipproj
