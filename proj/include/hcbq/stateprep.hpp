// Copyright 2026 The hcbq Authors
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

#pragma once

#include <vector>

#include "hcbq/circuit.hpp"
#include "hcbq/gaussian.hpp"

namespace hcbq {

/// Mode rotation in the plane (site, site + 1). Same parameterization as
/// GivensGate: g = [[cos t, -sin t e^{i phi}], [sin t, cos t e^{i phi}]].
struct GivensRotation {
  int site = 0;
  Real theta = 0.0;
  Real phi = 0.0;
};

/// Result of nulling a correlation matrix. `rotations` are in the order
/// they were applied to Lambda; their product V (last applied leftmost)
/// diagonalizes it: V Lambda V^dag = diag(occupation pattern).
struct PrepPlan {
  int sites = 0;
  std::vector<int> occupied_sites;
  std::vector<GivensRotation> rotations;
  /// max |(V Lambda V^dag) - diag(pattern)| after nulling.
  Real residual = 0.0;
};

inline constexpr Real kDefaultNullingTolerance = 1e-9;

/// 2x2 mode map of a rotation.
Matrix2c rotation_matrix(const GivensRotation& r);

/// L x L product of the plan's rotations, V = R_K ... R_1.
MatrixXc plan_unitary(const PrepPlan& plan);

/// Grows a leading block from each deflated site until one of its
/// eigenvectors has eigenvalue within `tol` of 0 or 1 and is an eigenvector
/// of the remaining matrix to within `tol`. Throws NumericalError if Lambda
/// is not a pure Gaussian correlation matrix to within `tol`.
PrepPlan givens_sequence(const CorrelationMatrix& lambda, Real tol = kDefaultNullingTolerance);

/// X gates on occupied sites, then the rotations in reverse nulling order.
Circuit plan_to_circuit(const PrepPlan& plan);

}  // namespace hcbq
