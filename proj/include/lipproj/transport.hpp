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

#ifndef LIPPROJ_TRANSPORT_HPP_
#define LIPPROJ_TRANSPORT_HPP_

#include "lipproj/geometry.hpp"

namespace lipproj {

struct TransportSolution {
  // Minimal transport cost sum flow(i,j) * dist(i,j).
  double cost = 0.0;
  // Optimal dual: 1-Lipschitz for `dist`, zero at node 0, and
  // sum_i weights(i) * potential(i) == cost up to rounding.
  Vector potential;
  int augmentations = 0;
};

// Uncapacitated min-cost flow on the complete graph with arc costs `dist`
// and node supplies `weights` (out-flow minus in-flow). Successive shortest
// paths with dense Dijkstra over reduced costs. Throws kParameter if the
// weights do not sum to zero within 1e-12 (relative to their l1 norm when it
// exceeds 1).
TransportSolution SolveTransport(const Matrix& dist, const Vector& weights);

}  // namespace lipproj

#endif  // LIPPROJ_TRANSPORT_HPP_
