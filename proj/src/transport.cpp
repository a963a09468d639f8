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

#include "lipproj/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "lipproj/error.hpp"

namespace lipproj {

TransportSolution SolveTransport(const Matrix& dist, const Vector& weights) {
  const int p = static_cast<int>(weights.size());
  if (dist.rows() != p || dist.cols() != p) {
    Fail(ErrorCode::kDimensionMismatch, "transport: distance matrix does not match weights");
  }
  if (p == 0) Fail(ErrorCode::kParameter, "transport: empty weight vector");
  for (int i = 0; i < p; ++i) {
    if (!std::isfinite(weights(i))) Fail(ErrorCode::kDomain, "transport: non-finite weight");
  }
  const double l1 = weights.lpNorm<1>();
  const double imbalance = weights.sum();
  if (std::abs(imbalance) > 1e-12 * std::max(1.0, l1)) {
    Fail(ErrorCode::kParameter,
         "transport: weights must sum to zero (sum = " + std::to_string(imbalance) + ")");
  }

  TransportSolution out;
  out.potential = Vector::Zero(p);
  if (l1 == 0.0) return out;

  const double tol = 1e-14 * l1;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Vector excess = weights;
  Matrix flow = Matrix::Zero(p, p);
  Vector pot = Vector::Zero(p);
  std::vector<double> d(p);
  std::vector<int> parent(p);
  std::vector<char> backward(p), done(p);
  const int max_aug = 10 * p * p + 100;

  while (true) {
    bool any_source = false, any_sink = false;
    for (int i = 0; i < p; ++i) {
      any_source |= excess(i) > tol;
      any_sink |= excess(i) < -tol;
    }
    if (!any_source || !any_sink) break;
    if (out.augmentations >= max_aug) {
      Fail(ErrorCode::kContract, "transport: augmentation limit exceeded");
    }

    std::fill(d.begin(), d.end(), kInf);
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    for (int i = 0; i < p; ++i) {
      if (excess(i) > tol) d[i] = 0.0;
    }
    int sink = -1;
    for (int it = 0; it < p; ++it) {
      int u = -1;
      for (int v = 0; v < p; ++v) {
        if (!done[v] && (u < 0 || d[v] < d[u])) u = v;
      }
      if (u < 0 || d[u] == kInf) break;
      done[u] = 1;
      if (excess(u) < -tol) {
        sink = u;
        break;
      }
      for (int v = 0; v < p; ++v) {
        if (done[v] || v == u) continue;
        const bool back = flow(v, u) > 0.0;
        const double arc = back ? -dist(v, u) : dist(u, v);
        const double rc = std::max(0.0, arc + pot(u) - pot(v));
        if (d[u] + rc < d[v]) {
          d[v] = d[u] + rc;
          parent[v] = u;
          backward[v] = back;
        }
      }
    }
    if (sink < 0) Fail(ErrorCode::kContract, "transport: no augmenting path");

    const double dt = d[sink];
    for (int v = 0; v < p; ++v) pot(v) += std::min(d[v], dt);

    int v = sink;
    double amount = -excess(sink);
    while (parent[v] >= 0) {
      if (backward[v]) amount = std::min(amount, flow(v, parent[v]));
      v = parent[v];
    }
    const int source = v;
    amount = std::min(amount, excess(source));

    v = sink;
    while (parent[v] >= 0) {
      const int u = parent[v];
      if (backward[v]) {
        flow(v, u) -= amount;
        if (flow(v, u) <= tol) flow(v, u) = 0.0;
      } else {
        flow(u, v) += amount;
      }
      v = u;
    }
    excess(source) -= amount;
    excess(sink) += amount;
    if (std::abs(excess(source)) <= tol) excess(source) = 0.0;
    if (std::abs(excess(sink)) <= tol) excess(sink) = 0.0;
    ++out.augmentations;
  }

  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) out.cost += flow(i, j) * dist(i, j);
  }
  // Reduced costs dist(i,j) + pot(i) - pot(j) >= 0, so -pot is 1-Lipschitz.
  out.potential = -(pot.array() - pot(0)).matrix();
  return out;
}

}  // namespace lipproj
