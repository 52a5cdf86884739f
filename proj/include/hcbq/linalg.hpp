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

#include <cmath>

#include <Eigen/Dense>

#include "hcbq/types.hpp"

namespace hcbq {

/// Largest absolute entry of M - M^dagger.
template <typename Derived>
Real hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<Real>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, Real tol) {
  return hermiticity_defect(m) <= tol;
}

template <typename Derived>
auto hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  Plain out = (m + m.adjoint()) / typename Derived::Scalar(2);
  return out;
}

/// Determinant factored as sign * exp(log_abs). `sign` is a unit-modulus
/// phase for complex scalars, +-1 for real ones, and 0 for singular input.
template <typename Scalar>
struct LogDet {
  Scalar sign;
  Real log_abs;

  Scalar value() const { return sign * std::exp(log_abs); }
};

/// Determinant via LU with partial pivoting, accumulated in log domain.
template <typename Derived>
LogDet<typename Derived::Scalar> log_determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() == 0) return {Scalar(1), 0.0};
  Eigen::PartialPivLU<typename Derived::PlainObject> lu(m);
  const auto& packed = lu.matrixLU();
  Scalar sign = Scalar(lu.permutationP().determinant());
  Real log_abs = 0.0;
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const Scalar d = packed(i, i);
    const Real a = std::abs(d);
    if (a == 0.0) return {Scalar(0), -std::numeric_limits<Real>::infinity()};
    sign *= d / a;
    log_abs += std::log(a);
  }
  return {sign, log_abs};
}

template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  return log_determinant(m).value();
}

/// Hermitian eigendecomposition with eigenvalues ascending.
struct Eigensystem {
  VectorXr values;
  MatrixXc vectors;
};

Eigensystem eigh(const MatrixXc& h);

/// exp(-i h t) for Hermitian h, from a precomputed eigensystem.
MatrixXc propagator(const Eigensystem& eig, Real t);

/// Rotates v by a global phase so its largest-magnitude entry is real and
/// positive. Ties go to the lowest index.
VectorXc fix_gauge(const VectorXc& v);

}  // namespace hcbq
