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

#include "hcbq/linalg.hpp"

namespace hcbq {

Eigensystem eigh(const MatrixXc& h) {
  if (h.rows() == 0) return {VectorXr(0), MatrixXc(0, 0)};
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("eigh: Hermitian eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

MatrixXc propagator(const Eigensystem& eig, Real t) {
  VectorXc phases(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) phases(k) = std::exp(-kI * eig.values(k) * t);
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

VectorXc fix_gauge(const VectorXc& v) {
  if (v.size() == 0) return v;
  const Real top = v.cwiseAbs().maxCoeff();
  if (top == 0.0) return v;
  // near-ties resolved to the lowest index so the choice is reproducible
  Eigen::Index pick = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= top * (1.0 - 1e-12)) {
      pick = i;
      break;
    }
  }
  const Complex phase = std::conj(v(pick)) / std::abs(v(pick));
  return v * phase;
}

}  // namespace hcbq
