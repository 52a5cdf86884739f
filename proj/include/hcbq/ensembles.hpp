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

#include "hcbq/gaussian.hpp"
#include "hcbq/model.hpp"

namespace hcbq {

/// Single-particle eigenbasis of a quadratic Hamiltonian. Column k of
/// `modes` holds u_k(site); the mode creator is c^dag_k = sum_j u_k(j) f^dag_j.
///
/// Periodic chains without a potential use plane waves
/// u_k(j) = exp(-i k j 2 pi / L) / sqrt(L), k = -floor(L/2)..., so mode
/// occupations coincide with momentum_distribution(Lambda). Everything else
/// uses the eigenvectors of h and labels modes by eigenvalue rank.
struct ModeBasis {
  MatrixXc modes;
  VectorXr energies;
  std::vector<int> labels;
  bool momentum = false;
};

ModeBasis mode_basis(const HamiltonianSpec& spec);
ModeBasis mode_basis(const HoppingMatrix& h);

/// <c^dag_k c_k> of a Slater state in the given basis.
VectorXr mode_occupations(const SlaterState& state, const ModeBasis& basis);

inline constexpr Real kOccupationClamp = 1e-12;

struct GGESpec {
  ModeBasis basis;
  VectorXr multipliers;
  /// Occupations the multipliers reproduce (clamped initial values).
  VectorXr occupations;
  Real log_partition = 0.0;
};

struct GESpec {
  ModeBasis basis;
  Real beta = 0.0;
  /// beta * mu; finite at infinite temperature where mu itself is not.
  Real beta_mu = 0.0;
  /// NaN when beta == 0.
  Real mu = 0.0;
  Real log_partition = 0.0;
  Real target_energy = 0.0;
  Real target_particles = 0.0;
  int iterations = 0;
  Real residual = 0.0;

  VectorXr multipliers() const;
};

/// lambda = ln((1 - n) / n) with n clamped to [1e-12, 1 - 1e-12].
Real gge_multiplier(Real occupation);

/// Fermi occupation 1 / (1 + e^lambda), exact 0 / 1 at +-infinity.
Real fermi_occupation(Real multiplier);

GGESpec gge_from_initial(const SlaterState& state, const HamiltonianSpec& spec);

/// Fits (beta, mu) to the state's energy and particle number under h.
/// Throws NumericalError after 500 Newton iterations without reaching 1e-8.
GESpec ge_fit(const SlaterState& state, const HoppingMatrix& h);

/// Known-(beta, mu) ensemble; used to build forward-map targets.
GESpec ge_from_parameters(const HoppingMatrix& h, Real beta, Real mu);

/// Solve for (beta, beta*mu) given target energy and particle number.
GESpec ge_fit_targets(const HoppingMatrix& h, Real energy, Real particles);

DensityMatrix ensemble_density_matrix(const ModeBasis& basis, const VectorXr& multipliers);
DensityMatrix ensemble_density_matrix(const GGESpec& spec);
DensityMatrix ensemble_density_matrix(const GESpec& spec);

/// <f^dag_i f_j> in the ensemble.
CorrelationMatrix ensemble_fermion_correlations(const ModeBasis& basis, const VectorXr& multipliers);

MomentumDistribution ensemble_momentum_distribution(const GGESpec& spec);
MomentumDistribution ensemble_momentum_distribution(const GESpec& spec);

/// Largest gap between the diagonal evaluated through the string-determinant
/// route (with exp(E_ii) = I + (e - 1) E_ii) and the closed-form diagonal.
Real ensemble_diagonal_consistency(const ModeBasis& basis, const VectorXr& multipliers);

}  // namespace hcbq
