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

#include "hcbq/stateprep.hpp"

#include <cmath>

#include "hcbq/linalg.hpp"

namespace hcbq {

Matrix2c rotation_matrix(const GivensRotation& r) {
  const Real c = std::cos(r.theta);
  const Real s = std::sin(r.theta);
  const Complex e = std::exp(kI * r.phi);
  Matrix2c g;
  g << c, -s * e, s, c * e;
  return g;
}

MatrixXc plan_unitary(const PrepPlan& plan) {
  MatrixXc v = MatrixXc::Identity(plan.sites, plan.sites);
  for (const auto& r : plan.rotations) {
    const Matrix2c g = rotation_matrix(r);
    v.middleRows(r.site, 2) = (g * v.middleRows(r.site, 2)).eval();
  }
  return v;
}

namespace {

/// Rotation in plane (i, i+1) sending (a, b) to (r, 0) up to a phase.
GivensRotation eliminate(int site, Complex a, Complex b) {
  if (std::abs(a.imag()) < 1e-14 && std::abs(b.imag()) < 1e-14) {
    return {site, std::atan2(-b.real(), a.real()), 0.0};
  }
  const Real phi = (std::abs(a) > 0 ? std::arg(a) : 0.0) - std::arg(b);
  return {site, std::atan2(-std::abs(b), std::abs(a)), phi};
}

}  // namespace

PrepPlan givens_sequence(const CorrelationMatrix& correlations, Real tol) {
  MatrixXc lam = correlations.lambda;
  const int L = static_cast<int>(lam.rows());
  if (lam.cols() != L) throw ConfigError("givens_sequence: correlation matrix must be square");
  PrepPlan plan;
  plan.sites = L;

  auto apply = [&](const GivensRotation& r) {
    const Matrix2c g = rotation_matrix(r);
    lam.middleRows(r.site, 2) = (g * lam.middleRows(r.site, 2)).eval();
    lam.middleCols(r.site, 2) = (lam.middleCols(r.site, 2) * g.adjoint()).eval();
    plan.rotations.push_back(r);
  };

  for (int start = 0; start < L; ++start) {
    bool found = false;
    for (int end = start + 1; end <= L && !found; ++end) {
      const int m = end - start;
      const Eigensystem eig = eigh(hermitian_part(MatrixXc(lam.block(start, start, m, m))));
      int pick = -1;
      Real best = tol;
      for (int k = 0; k < m; ++k) {
        const Real dist = std::min(std::abs(eig.values(k)), std::abs(1.0 - eig.values(k)));
        if (dist > tol || (pick >= 0 && dist >= best)) continue;
        // a block eigenvalue near 0/1 only bounds the coupling to the rest of
        // the chain by sqrt(dist); also require the eigenvector to hold for
        // the whole remaining matrix
        const VectorXc coupled = lam.block(start, start, L - start, m) * eig.vectors.col(k);
        Real leak = (coupled.head(m) - eig.values(k) * eig.vectors.col(k)).norm();
        leak = std::hypot(leak, coupled.tail(L - start - m).norm());
        if (leak > tol) continue;
        pick = k;
        best = dist;
      }
      if (pick < 0) continue;
      found = true;
      VectorXc v = fix_gauge(eig.vectors.col(pick));
      // descending chain: zero v(i+1) against v(i), from the bottom up
      for (int i = m - 2; i >= 0; --i) {
        if (std::abs(v(i + 1)) <= 1e-15) continue;
        const GivensRotation r = eliminate(start + i, v(i), v(i + 1));
        v.segment(i, 2) = (rotation_matrix(r) * v.segment(i, 2)).eval();
        apply(r);
      }
    }
    if (!found)
      throw NumericalError("givens_sequence: no eigenvalue within " + std::to_string(tol) +
                           " of 0 or 1 starting at site " + std::to_string(start) +
                           "; input is not a pure Gaussian correlation matrix");
    if (std::real(lam(start, start)) > 0.5) plan.occupied_sites.push_back(start);
  }

  MatrixXc target = MatrixXc::Zero(L, L);
  for (int s : plan.occupied_sites) target(s, s) = 1.0;
  plan.residual = L > 0 ? (lam - target).cwiseAbs().maxCoeff() : 0.0;
  return plan;
}

Circuit plan_to_circuit(const PrepPlan& plan) {
  Circuit c;
  c.qubits = plan.sites;
  for (int s : plan.occupied_sites) c.gates.emplace_back(XGate{s});
  for (auto it = plan.rotations.rbegin(); it != plan.rotations.rend(); ++it)
    c.gates.emplace_back(GivensGate{it->site, it->theta, it->phi});
  return c;
}

}  // namespace hcbq
