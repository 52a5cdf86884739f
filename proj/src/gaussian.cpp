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

#include "hcbq/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <set>

namespace hcbq {

Real SlaterState::orthonormality_defect() const {
  if (modes.cols() == 0) return 0.0;
  const MatrixXc gram = modes.adjoint() * modes;
  return (gram - MatrixXc::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

Real MomentumDistribution::physical_momentum(std::size_t idx) const {
  return 2.0 * kPi * modes.at(idx) / static_cast<Real>(sites);
}

SlaterState ground_state(const HoppingMatrix& h, int particles) {
  const int L = static_cast<int>(h.rows());
  if (particles < 0 || particles > L)
    throw ConfigError("ground_state: particle count " + std::to_string(particles) + " outside 0.." +
                      std::to_string(L));
  const Eigensystem eig = eigh(h);
  if (particles > 0 && particles < L && std::abs(eig.values(particles) - eig.values(particles - 1)) < 1e-10)
    std::clog << "warning: ground_state: levels " << particles - 1 << " and " << particles
              << " are degenerate; the filled shell is ambiguous\n";
  return {eig.vectors.leftCols(particles)};
}

SlaterState fock_state(int sites, std::span<const int> occupied) {
  if (sites < 1) throw ConfigError("fock_state: need at least one site");
  std::set<int> seen;
  MatrixXc p = MatrixXc::Zero(sites, static_cast<Eigen::Index>(occupied.size()));
  for (std::size_t n = 0; n < occupied.size(); ++n) {
    const int s = occupied[n];
    if (s < 0 || s >= sites) throw ConfigError("fock_state: site " + std::to_string(s) + " out of range");
    if (!seen.insert(s).second) throw ConfigError("fock_state: duplicate site " + std::to_string(s));
    p(s, static_cast<Eigen::Index>(n)) = 1.0;
  }
  return {p};
}

SlaterState evolve(const SlaterState& state, const Eigensystem& h_eig, Real t) {
  return {propagator(h_eig, t) * state.modes};
}

SlaterState evolve(const SlaterState& state, const HoppingMatrix& h, Real t) {
  return evolve(state, eigh(h), t);
}

CorrelationMatrix fermion_correlations(const SlaterState& state) {
  return {state.modes.conjugate() * state.modes.transpose()};
}

MatrixXc hcb_green(const SlaterState& state) {
  const int L = state.sites();
  const int N = state.particles();
  const MatrixXc& p = state.modes;

  // string_state(j): rows above j negated, unit column e_j appended
  auto string_state = [&](int j) {
    MatrixXc out(L, N + 1);
    out.leftCols(N) = p;
    out.topRows(j).leftCols(N) *= -1.0;
    out.col(N).setZero();
    out(j, N) = 1.0;
    return out;
  };

  std::vector<MatrixXc> strings;
  strings.reserve(L);
  for (int j = 0; j < L; ++j) strings.push_back(string_state(j));

  MatrixXc g(L, L);
  for (int i = 0; i < L; ++i) {
    const MatrixXc lhs = strings[i].adjoint();
    for (int j = 0; j < L; ++j) {
      const MatrixXc overlap = lhs * strings[j];
      g(i, j) = determinant(overlap);
    }
  }
  return g;
}

DensityMatrix hcb_density_matrix(const SlaterState& state) {
  const MatrixXc g = hcb_green(state);
  MatrixXc rho = g.transpose();
  for (Eigen::Index i = 0; i < rho.rows(); ++i) rho(i, i) = 1.0 - g(i, i);
  const Real defect = hermiticity_defect(rho);
  if (defect > 1e-6)
    throw NumericalError("hcb_density_matrix: result not Hermitian (defect " + std::to_string(defect) +
                         "); determinant convention is broken");
  return {hermitian_part(rho)};
}

MomentumDistribution momentum_distribution(const MatrixXc& m) {
  const int L = static_cast<int>(m.rows());
  MomentumDistribution out;
  out.sites = L;
  out.occupation.resize(L);
  const int kmin = -(L / 2);
  for (int idx = 0; idx < L; ++idx) {
    const int k = kmin + idx;
    out.modes.push_back(k);
    // n_k = u^dag M u with u_l = exp(+i k l 2pi/L) / sqrt(L)
    VectorXc u(L);
    for (int l = 0; l < L; ++l) u(l) = std::exp(kI * (2.0 * kPi * k * l / L)) / std::sqrt(static_cast<Real>(L));
    out.occupation(idx) = std::real(u.dot(m * u));
  }
  return out;
}

NaturalOrbitals natural_orbitals(const DensityMatrix& d) {
  const Eigensystem eig = eigh(hermitian_part(d.rho));
  const int L = static_cast<int>(eig.values.size());
  NaturalOrbitals out;
  out.occupations = eig.values.reverse();
  out.orbitals = eig.vectors.rowwise().reverse();

  int start = 0;
  while (start < L) {
    int end = start + 1;
    while (end < L && std::abs(out.occupations(end - 1) - out.occupations(end)) < 1e-8) ++end;
    if (end - start > 1) {
      out.degenerate_blocks.emplace_back(start, end - start);
    } else {
      out.orbitals.col(start) = fix_gauge(out.orbitals.col(start));
    }
    start = end;
  }
  return out;
}

LnoMatch lno_match(const VectorXc& first, const VectorXc& second, const VectorXc& reference) {
  if (first.size() != reference.size() || second.size() != reference.size())
    throw ConfigError("lno_match: orbital lengths differ");
  // minimizing ||a f + b s - r|| with |a|^2 + |b|^2 = 1 maximizes Re(a* <f,r> + b* <s,r>)
  const Complex c1 = first.dot(reference);
  const Complex c2 = second.dot(reference);
  const Real norm = std::sqrt(std::norm(c1) + std::norm(c2));
  LnoMatch out{};
  if (norm < 1e-12) {
    out.a = 1.0;
    out.b = 0.0;
    out.degenerate = true;
  } else {
    out.a = c1 / norm;
    out.b = c2 / norm;
    out.degenerate = false;
  }
  out.orbital = out.a * first + out.b * second;
  out.residual = (out.orbital - reference).norm();
  return out;
}

VectorXr site_densities(const MatrixXc& m) { return m.diagonal().real(); }

}  // namespace hcbq
