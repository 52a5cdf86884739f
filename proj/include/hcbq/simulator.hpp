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

#include <cstdint>
#include <random>
#include <span>
#include <string>

#include "hcbq/circuit.hpp"
#include "hcbq/gaussian.hpp"
#include "hcbq/model.hpp"

namespace hcbq {

/// Dense statevectors are capped at 26 qubits (1 GiB of amplitudes).
inline constexpr int kStatevectorCap = 26;
/// Dense 2^L x 2^L operators are capped at 12 sites.
inline constexpr int kOracleCap = 12;

/// Amplitudes over the computational basis; bit j of the index is qubit
/// (site) j, and |1> means the site is occupied.
struct Statevector {
  int qubits = 0;
  VectorXc amplitudes;

  Real norm() const { return amplitudes.norm(); }
};

/// Pauli letters per site from {I, X, Y, Z}; letter j acts on qubit j.
struct PauliString {
  std::string letters;

  static PauliString identity(int sites) { return {std::string(static_cast<std::size_t>(sites), 'I')}; }
  PauliString& set(int site, char letter);
};

Statevector init_bitstring(int qubits, std::span<const int> occupied);

void apply_gate(VectorXc& amplitudes, int qubits, const Gate& g);
Statevector apply_circuit(const Statevector& s, const Circuit& c);

/// <s|P|s>; throws NumericalError if the imaginary part exceeds 1e-12.
Real expectation(const Statevector& s, const PauliString& p);

/// rho_jl = (1/4)[<X_j X_l> + <Y_j Y_l> + i <X_j Y_l> - i <Y_j X_l>],
/// rho_jj = <(1 - Z_j)/2>.
DensityMatrix measure_density_matrix(const Statevector& s);

/// Same assembly from correlators estimated with `shots` samples each.
DensityMatrix measure_density_matrix_sampled(const Statevector& s, std::uint64_t shots, std::mt19937_64& rng);

/// Number of measurement bases a hardware run needs for all XX, YY, XY, YX
/// and Z correlators: all-X, all-Y, Z, plus two per bit of the site index.
int measurement_group_count(int sites);

/// <f^dag_i f_j> with Jordan-Wigner strings over sites between i and j.
CorrelationMatrix measure_fermion_correlations(const Statevector& s);

/// Particle number sum_j <n_j>.
Real particle_number(const Statevector& s);

/// Slater determinant written into the qubit basis, c^dag_1 ... c^dag_N |0>.
Statevector slater_to_statevector(const SlaterState& state);

/// Dense 2^L many-body Hamiltonian of the hard-core bosons (XY chain plus
/// on-site potential); real symmetric in the computational basis.
MatrixXr many_body_hamiltonian(const HamiltonianSpec& spec);

/// exp(-i H t)|s> by dense eigendecomposition.
Statevector evolve_exact(const HamiltonianSpec& spec, const Statevector& s, Real t);

/// Brute-force <b^dag_i b_j>(t) from a Fock initial state.
DensityMatrix exact_hcb_reference(const HamiltonianSpec& spec, std::span<const int> occupied, Real t);

/// Reusable dense propagator for repeated oracle queries on one spec.
class ExactEvolver {
 public:
  explicit ExactEvolver(const HamiltonianSpec& spec);
  Statevector evolve(const Statevector& s, Real t) const;

 private:
  int sites_;
  VectorXr energies_;
  MatrixXr vectors_;
};

}  // namespace hcbq
