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

#include "hcbq/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hcbq {

namespace {

/// log(1 + e^{-lambda}) without overflow.
Real softplus_neg(Real lambda) {
  if (lambda == std::numeric_limits<Real>::infinity()) return 0.0;
  if (lambda > 0) return std::log1p(std::exp(-lambda));
  return -lambda + std::log1p(std::exp(lambda));
}

Real log_partition(const VectorXr& multipliers) {
  Real z = 0.0;
  for (Eigen::Index k = 0; k < multipliers.size(); ++k) z += softplus_neg(multipliers(k));
  return z;
}

MatrixXc occupation_matrix(const ModeBasis& basis, const VectorXr& multipliers) {
  VectorXc n(multipliers.size());
  for (Eigen::Index k = 0; k < multipliers.size(); ++k) n(k) = fermi_occupation(multipliers(k));
  return basis.modes * n.asDiagonal() * basis.modes.adjoint();
}

}  // namespace

ModeBasis mode_basis(const HoppingMatrix& h) {
  const Eigensystem eig = eigh(h);
  ModeBasis out;
  out.modes = eig.vectors;
  out.energies = eig.values;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) out.labels.push_back(static_cast<int>(k));
  return out;
}

ModeBasis mode_basis(const HamiltonianSpec& spec) {
  if (spec.boundary != Boundary::periodic || spec.potential) return mode_basis(build_hopping_matrix(spec));
  spec.validate();
  const int L = spec.sites;
  ModeBasis out;
  out.momentum = true;
  out.modes.resize(L, L);
  out.energies.resize(L);
  const int kmin = -(L / 2);
  for (int idx = 0; idx < L; ++idx) {
    const int k = kmin + idx;
    out.labels.push_back(k);
    out.energies(idx) = dispersion(spec, k);
    for (int j = 0; j < L; ++j)
      out.modes(j, idx) = std::exp(-kI * (2.0 * kPi * k * j / L)) / std::sqrt(static_cast<Real>(L));
  }
  return out;
}

VectorXr mode_occupations(const SlaterState& state, const ModeBasis& basis) {
  const MatrixXc lambda = fermion_correlations(state).lambda;
  // n_k = sum_lm u_k(l) Lambda_lm conj(u_k(m))
  const MatrixXc n = basis.modes.transpose() * lambda * basis.modes.conjugate();
  return n.diagonal().real();
}

Real gge_multiplier(Real occupation) {
  const Real n = std::clamp(occupation, kOccupationClamp, 1.0 - kOccupationClamp);
  return std::log((1.0 - n) / n);
}

Real fermi_occupation(Real multiplier) {
  if (multiplier == std::numeric_limits<Real>::infinity()) return 0.0;
  if (multiplier == -std::numeric_limits<Real>::infinity()) return 1.0;
  if (multiplier > 0) {
    const Real e = std::exp(-multiplier);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(multiplier));
}

GGESpec gge_from_initial(const SlaterState& state, const HamiltonianSpec& spec) {
  if (state.sites() != spec.sites) throw ConfigError("gge_from_initial: state and spec sizes differ");
  GGESpec out;
  out.basis = mode_basis(spec);
  const VectorXr n0 = mode_occupations(state, out.basis);
  out.multipliers.resize(n0.size());
  out.occupations.resize(n0.size());
  for (Eigen::Index k = 0; k < n0.size(); ++k) {
    out.multipliers(k) = gge_multiplier(n0(k));
    out.occupations(k) = fermi_occupation(out.multipliers(k));
  }
  out.log_partition = log_partition(out.multipliers);
  return out;
}

VectorXr GESpec::multipliers() const {
  VectorXr out(basis.energies.size());
  for (Eigen::Index k = 0; k < out.size(); ++k) out(k) = beta * basis.energies(k) - beta_mu;
  return out;
}

GESpec ge_from_parameters(const HoppingMatrix& h, Real beta, Real mu) {
  GESpec out;
  out.basis = mode_basis(h);
  out.beta = beta;
  out.mu = mu;
  out.beta_mu = beta * mu;
  const VectorXr lam = out.multipliers();
  out.log_partition = log_partition(lam);
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    const Real n = fermi_occupation(lam(k));
    out.target_particles += n;
    out.target_energy += n * out.basis.energies(k);
  }
  return out;
}

GESpec ge_fit_targets(const HoppingMatrix& h, Real energy, Real particles) {
  GESpec out;
  out.basis = mode_basis(h);
  out.target_energy = energy;
  out.target_particles = particles;
  const VectorXr& eps = out.basis.energies;
  const auto L = static_cast<Real>(eps.size());

  if (particles <= kOccupationClamp || particles >= L - kOccupationClamp) {
    // empty or full band: every mode frozen, beta undetermined
    out.beta = 0.0;
    out.beta_mu = particles <= kOccupationClamp ? -std::numeric_limits<Real>::infinity()
                                                : std::numeric_limits<Real>::infinity();
    out.mu = std::numeric_limits<Real>::quiet_NaN();
    out.log_partition = log_partition(out.multipliers());
    return out;
  }

  // Minimize the convex dual F(beta, g) = log Z + beta E - g N, g = beta mu.
  // Its gradient vanishes exactly at the matching (beta, mu).
  struct Eval {
    Real f;
    Eigen::Vector2d grad;
    Eigen::Matrix2d hess;
  };
  auto evaluate = [&](Real beta, Real g) {
    Eval e{0.0, Eigen::Vector2d::Zero(), Eigen::Matrix2d::Zero()};
    Real n_sum = 0.0, e_sum = 0.0;
    for (Eigen::Index k = 0; k < eps.size(); ++k) {
      const Real lam = beta * eps(k) - g;
      const Real n = fermi_occupation(lam);
      const Real w = n * (1.0 - n);
      e.f += softplus_neg(lam);
      n_sum += n;
      e_sum += n * eps(k);
      e.hess(0, 0) += w * eps(k) * eps(k);
      e.hess(0, 1) -= w * eps(k);
      e.hess(1, 1) += w;
    }
    e.hess(1, 0) = e.hess(0, 1);
    e.f += beta * energy - g * particles;
    e.grad << energy - e_sum, n_sum - particles;
    return e;
  };

  // infinite-temperature start; exact for flat (Fock-like) inputs
  Real beta = 0.0;
  Real g = std::log(particles / (L - particles));
  Eval cur = evaluate(beta, g);
  int it = 0;
  // iterate well past the 1e-8 acceptance level; quadratic convergence makes
  // the extra steps cheap and tightens the recovered (beta, mu)
  for (; it < 500 && cur.grad.cwiseAbs().maxCoeff() >= 1e-13; ++it) {
    Eigen::Matrix2d hreg = cur.hess;
    hreg.diagonal().array() += 1e-14;
    const Eigen::Vector2d step = -hreg.ldlt().solve(cur.grad);
    Real damping = 1.0;
    Eval next = evaluate(beta + step(0), g + step(1));
    while (!(next.f <= cur.f + 1e-4 * damping * cur.grad.dot(step)) && damping > 1e-10) {
      damping *= 0.5;
      next = evaluate(beta + damping * step(0), g + damping * step(1));
    }
    if (damping <= 1e-10) break;
    beta += damping * step(0);
    g += damping * step(1);
    cur = next;
  }
  out.residual = cur.grad.cwiseAbs().maxCoeff();
  out.iterations = it;
  if (out.residual >= 1e-8)
    throw NumericalError("ge_fit: no convergence after " + std::to_string(it) +
                         " iterations, residual " + std::to_string(out.residual));
  out.beta = beta;
  out.beta_mu = g;
  out.mu = std::abs(beta) > 1e-14 ? g / beta : std::numeric_limits<Real>::quiet_NaN();
  out.log_partition = log_partition(out.multipliers());
  return out;
}

GESpec ge_fit(const SlaterState& state, const HoppingMatrix& h) {
  if (state.sites() != h.rows()) throw ConfigError("ge_fit: state and Hamiltonian sizes differ");
  const MatrixXc lambda = fermion_correlations(state).lambda;
  const Real energy = std::real((h.array() * lambda.array()).sum());
  const Real particles = std::real(lambda.trace());
  return ge_fit_targets(h, energy, particles);
}

CorrelationMatrix ensemble_fermion_correlations(const ModeBasis& basis, const VectorXr& multipliers) {
  return {occupation_matrix(basis, multipliers).conjugate()};
}

DensityMatrix ensemble_density_matrix(const ModeBasis& basis, const VectorXr& multipliers) {
  const int L = static_cast<int>(basis.modes.rows());
  if (multipliers.size() != L) throw ConfigError("ensemble_density_matrix: multiplier count differs from L");
  // C = (I + e^{-X})^{-1} e^{-X}; dividing each trace by Z leaves
  // det[I - C + O' C] with O' the string (and hop) operator.
  const MatrixXc c = occupation_matrix(basis, multipliers);
  const MatrixXc id = MatrixXc::Identity(L, L);

  MatrixXc rho(L, L);
  for (int i = 0; i < L; ++i) rho(i, i) = std::real(c(i, i));
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      if (i == j) continue;
      // b^dag_i b_j = s f^dag_i f_j S_<i S_<j with s = -1 when f_j passes site j in S_<i
      const Real s = j < i ? -1.0 : 1.0;
      VectorXc signs(L);
      for (int l = 0; l < L; ++l) signs(l) = ((l < i) != (l < j)) ? -1.0 : 1.0;
      const MatrixXc oc = signs.asDiagonal() * c;
      const MatrixXc base = id - c + oc;
      MatrixXc hop = base;
      hop.row(i) += oc.row(j);
      const LogDet<Complex> with_hop = log_determinant(hop);
      const LogDet<Complex> without = log_determinant(base);
      rho(i, j) = s * (with_hop.value() - without.value());
    }
  }
  const Real trace_gap = std::abs(std::real(rho.trace()) - std::real(c.trace()));
  if (trace_gap > 1e-8) throw NumericalError("ensemble_density_matrix: trace mismatch " + std::to_string(trace_gap));
  return {hermitian_part(rho)};
}

DensityMatrix ensemble_density_matrix(const GGESpec& spec) {
  return ensemble_density_matrix(spec.basis, spec.multipliers);
}

DensityMatrix ensemble_density_matrix(const GESpec& spec) {
  return ensemble_density_matrix(spec.basis, spec.multipliers());
}

MomentumDistribution ensemble_momentum_distribution(const GGESpec& spec) {
  return momentum_distribution(ensemble_density_matrix(spec));
}

MomentumDistribution ensemble_momentum_distribution(const GESpec& spec) {
  return momentum_distribution(ensemble_density_matrix(spec));
}

Real ensemble_diagonal_consistency(const ModeBasis& basis, const VectorXr& multipliers) {
  const int L = static_cast<int>(basis.modes.rows());
  const MatrixXc c = occupation_matrix(basis, multipliers);
  const MatrixXc id = MatrixXc::Identity(L, L);
  const Real e1 = std::exp(1.0) - 1.0;
  Real worst = 0.0;
  for (int i = 0; i < L; ++i) {
    // strings cancel for i == j, so O' = exp(E_ii) alone
    MatrixXc m = id;
    m.row(i) += e1 * c.row(i);
    const Complex via_det = (determinant(m) - 1.0) / e1;
    worst = std::max(worst, std::abs(via_det - c(i, i)));
  }
  return worst;
}

}  // namespace hcbq
