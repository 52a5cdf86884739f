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

#include <span>
#include <utility>
#include <vector>

#include "hcbq/linalg.hpp"
#include "hcbq/model.hpp"
#include "hcbq/types.hpp"

namespace hcbq {

/// N-fermion Slater determinant: column n of `modes` is the site amplitude
/// vector of the n-th occupied single-particle mode (L x N, orthonormal).
struct SlaterState {
  MatrixXc modes;

  int sites() const { return static_cast<int>(modes.rows()); }
  int particles() const { return static_cast<int>(modes.cols()); }

  /// Largest deviation of modes^dag modes from the identity.
  Real orthonormality_defect() const;
};

/// Lambda_ij = <f^dag_i f_j>.
struct CorrelationMatrix {
  MatrixXc lambda;
};

/// rho_ij = <b^dag_i b_j>, the bosonic one-particle density matrix.
struct DensityMatrix {
  MatrixXc rho;
};

/// Natural orbitals sorted by descending occupation. Orbitals inside a
/// degenerate block are left as returned by the eigensolver; every other
/// orbital has its largest-magnitude entry real and positive.
struct NaturalOrbitals {
  VectorXr occupations;
  MatrixXc orbitals;
  /// (first index, size) of each run of occupations equal within 1e-8.
  std::vector<std::pair<int, int>> degenerate_blocks;
};

enum class ParticleKind { boson, fermion };

/// Occupations on the integer mode grid k = -floor(L/2), ..., L - 1 - floor(L/2).
struct MomentumDistribution {
  std::vector<int> modes;
  VectorXr occupation;
  int sites = 0;

  Real physical_momentum(std::size_t idx) const;
  Real total() const { return occupation.sum(); }
};

struct LnoMatch {
  VectorXc orbital;
  Complex a;
  Complex b;
  /// || orbital - reference ||_2
  Real residual;
  /// Reference has no overlap with the pair; (a, b) = (1, 0) was returned.
  bool degenerate;
};

SlaterState ground_state(const HoppingMatrix& h, int particles);

/// Unit-vector modes on the given 0-based sites.
SlaterState fock_state(int sites, std::span<const int> occupied);

/// P(t) = exp(-i h t) P(0).
SlaterState evolve(const SlaterState& state, const HoppingMatrix& h, Real t);
SlaterState evolve(const SlaterState& state, const Eigensystem& h_eig, Real t);

CorrelationMatrix fermion_correlations(const SlaterState& state);

/// G_ij = <b_i b^dag_j>, each entry an (N+1) x (N+1) determinant.
MatrixXc hcb_green(const SlaterState& state);

DensityMatrix hcb_density_matrix(const SlaterState& state);

/// n_k = (1/L) sum_lm exp(-i k (l - m) 2 pi / L) M_lm, so that sum_k n_k = tr M.
MomentumDistribution momentum_distribution(const MatrixXc& m);
inline MomentumDistribution momentum_distribution(const DensityMatrix& d) { return momentum_distribution(d.rho); }
inline MomentumDistribution momentum_distribution(const CorrelationMatrix& c) {
  return momentum_distribution(c.lambda);
}

NaturalOrbitals natural_orbitals(const DensityMatrix& d);

/// Unit combination a*first + b*second closest to `reference` in 2-norm.
/// `first` and `second` are expected orthonormal (eigenvectors of rho).
LnoMatch lno_match(const VectorXc& first, const VectorXc& second, const VectorXc& reference);

/// Real-space densities <n_i> (diagonal of either matrix).
VectorXr site_densities(const MatrixXc& m);

}  // namespace hcbq
