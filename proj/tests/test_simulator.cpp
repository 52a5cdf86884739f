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

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hcbq/compiler.hpp"
#include "hcbq/simulator.hpp"
#include "oracles.hpp"

using namespace hcbq;

namespace {
HamiltonianSpec chain(int L, Boundary b = Boundary::open) { return {L, 1.0, b, std::nullopt}; }
Real max_abs(const MatrixXc& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Statevector random_state(int L, std::mt19937_64& rng) {
  std::normal_distribution<Real> g;
  VectorXc v(Eigen::Index{1} << L);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
  return {L, v.normalized()};
}
}  // namespace

TEST_CASE("pauli expectations") {
  const Statevector zero = init_bitstring(1, {});
  CHECK(expectation(zero, {"Z"}) == 1.0);
  const std::vector<int> occ = {0, 2};
  const Statevector basis = init_bitstring(4, occ);
  CHECK(expectation(basis, {"XIXI"}) == 0.0);
  CHECK(expectation(basis, {"ZZZZ"}) == 1.0);
  CHECK(expectation(basis, {"ZIII"}) == -1.0);

  std::mt19937_64 rng(51);
  const Statevector s = random_state(4, rng);
  for (const char* p : {"XXII", "IYYI", "XIYZ", "ZZXY", "YIIX"}) {
    const Complex direct = s.amplitudes.dot(oracle::op(p) * s.amplitudes);
    CHECK(expectation(s, {p}) == doctest::Approx(direct.real()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(expectation(s, {"XX"}), ConfigError);
  CHECK_THROWS_AS(PauliString::identity(3).set(1, 'Q'), ConfigError);
}

TEST_CASE("gate kernels agree with kronecker embedding") {
  std::mt19937_64 rng(52);
  const Statevector s = random_state(4, rng);
  const Matchgate m{1, 0.3, -0.8};
  const GivensGate g{2, 0.9, 0.4};
  VectorXc a = s.amplitudes;
  apply_gate(a, 4, m);
  const MatrixXc full_m =
      oracle::kron(MatrixXc::Identity(2, 2), oracle::kron(matchgate_unitary(m), MatrixXc::Identity(2, 2)));
  CHECK(max_abs(a - full_m * s.amplitudes) < 1e-14);
  VectorXc b = s.amplitudes;
  apply_gate(b, 4, g);
  const MatrixXc full_g = oracle::kron(givens_unitary(g), MatrixXc::Identity(4, 4));
  CHECK(max_abs(b - full_g * s.amplitudes) < 1e-14);
  VectorXc c = s.amplitudes;
  apply_gate(c, 4, XGate{3});
  CHECK(max_abs(c - oracle::op("IIIX") * s.amplitudes) < 1e-15);
}

TEST_CASE("density matrix of basis states") {
  const std::vector<int> occ = {0};
  const DensityMatrix r = measure_density_matrix(init_bitstring(2, occ));
  CHECK(r.rho(0, 0) == Complex(1.0));
  CHECK(r.rho(1, 1) == Complex(0.0));
  CHECK(r.rho(0, 1) == Complex(0.0));
}

TEST_CASE("pauli assembly equals the boson operators") {
  std::mt19937_64 rng(53);
  const Statevector s = random_state(5, rng);
  CHECK(max_abs(measure_density_matrix(s).rho - oracle::rho(s.amplitudes)) < 1e-12);
  CHECK(max_abs(measure_fermion_correlations(s).lambda - oracle::lambda(s.amplitudes)) < 1e-12);
}

TEST_CASE("slater state in the qubit basis") {
  std::mt19937_64 rng(54);
  const SlaterState st{oracle::random_modes(6, 3, rng)};
  const Statevector psi = slater_to_statevector(st);
  CHECK(psi.norm() == doctest::Approx(1.0));
  CHECK(max_abs(psi.amplitudes - oracle::slater(st.modes)) < 1e-12);
  CHECK(max_abs(measure_density_matrix(psi).rho - hcb_density_matrix(st).rho) < 1e-12);
  CHECK(max_abs(measure_fermion_correlations(psi).lambda - fermion_correlations(st).lambda) < 1e-12);
}

TEST_CASE("many-body hamiltonian equals the operator sum") {
  for (auto spec : {chain(5), chain(4, Boundary::periodic), HamiltonianSpec{6, 0.7, Boundary::open, Superlattice{2.0, 3}}}) {
    const MatrixXc expected = oracle::hcb_hamiltonian(build_hopping_matrix(spec));
    CHECK(max_abs(many_body_hamiltonian(spec).cast<Complex>() - expected) < 1e-14);
  }
  CHECK_THROWS_AS(many_body_hamiltonian(chain(13)), ConfigError);
}

TEST_CASE("exact reference") {
  const HamiltonianSpec spec = chain(6);
  CHECK(max_abs(exact_hcb_reference(spec, {}, 2.0).rho) == 0.0);
  const std::vector<int> one = {0};
  for (Real t : {0.2, 1.0, 2.5}) {
    const DensityMatrix r = exact_hcb_reference(chain(2), one, t);
    CHECK(r.rho(0, 0).real() == doctest::Approx(std::cos(t) * std::cos(t)));
  }
  const std::vector<int> occ = {1, 2, 4};
  const MatrixXc h = build_hopping_matrix(spec);
  const MatrixXc expected = oracle::rho(oracle::evolve(oracle::hcb_hamiltonian(h), oracle::basis_state(6, occ), 1.3));
  CHECK(max_abs(exact_hcb_reference(spec, occ, 1.3).rho - expected) < 1e-10);
  CHECK_THROWS_AS(exact_hcb_reference(chain(13), occ, 1.0), ConfigError);
}

TEST_CASE("exact reference agrees with the gaussian engine") {
  std::mt19937_64 rng(55);
  const HamiltonianSpec spec = chain(8);
  const std::vector<int> occ = {0, 3, 4, 6};
  const ExactEvolver ev(spec);
  const MatrixXc h = build_hopping_matrix(spec);
  for (Real t : {0.5, 2.0, 4.5}) {
    const MatrixXc dense = measure_density_matrix(ev.evolve(init_bitstring(8, occ), t)).rho;
    CHECK(max_abs(dense - hcb_density_matrix(evolve(fock_state(8, occ), h, t)).rho) < 1e-10);
  }
  // periodic ring with an odd particle count
  const HamiltonianSpec ring = chain(7, Boundary::periodic);
  const std::vector<int> three = {0, 1, 2};
  CHECK(max_abs(exact_hcb_reference(ring, three, 1.7).rho -
                hcb_density_matrix(evolve(fock_state(7, three), build_hopping_matrix(ring), 1.7)).rho) < 1e-10);
}

TEST_CASE("compressed trotter statevector tracks the gaussian engine") {
  const HamiltonianSpec spec = chain(8);
  const std::vector<int> occ = {2, 3, 4, 5};
  const MatrixXc exact = hcb_density_matrix(evolve(fock_state(8, occ), build_hopping_matrix(spec), 1.0)).rho;
  // second-order splitting reaches 1e-9 before rounding in the squared
  // triangles takes over
  const Circuit c = trotter_compressed(spec, 1.0, std::uint64_t{1} << 16, 2);
  const Statevector psi = apply_circuit(init_bitstring(8, occ), c);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
  CHECK(max_abs(measure_density_matrix(psi).rho - exact) < 1e-9);
}

TEST_CASE("shot sampling converges at the statistical rate") {
  std::mt19937_64 rng(56);
  const HamiltonianSpec spec = chain(5);
  const std::vector<int> occ = {1, 2};
  const Statevector psi = ExactEvolver(spec).evolve(init_bitstring(5, occ), 0.8);
  const MatrixXc exact = measure_density_matrix(psi).rho;
  for (std::uint64_t shots : {std::uint64_t{1000}, std::uint64_t{100000}}) {
    const MatrixXc est = measure_density_matrix_sampled(psi, shots, rng).rho;
    // each off-diagonal entry averages four correlators, each with variance <= 1/shots
    const Real sigma = 0.25 * std::sqrt(4.0 / static_cast<Real>(shots));
    CHECK(max_abs(est - exact) < 3.0 * 2.0 * sigma + 1e-12);
  }
  CHECK_THROWS_AS(measure_density_matrix_sampled(psi, 0, rng), ConfigError);
}

TEST_CASE("measurement group count grows logarithmically") {
  CHECK(measurement_group_count(2) == 5);
  CHECK(measurement_group_count(8) == 9);
  CHECK(measurement_group_count(32) == 13);
  CHECK(measurement_group_count(33) == 15);
}

TEST_CASE("statevector size cap") {
  CHECK_THROWS_AS(init_bitstring(27, {}), ConfigError);
  CHECK_THROWS_AS(init_bitstring(0, {}), ConfigError);
  const std::vector<int> bad = {4};
  CHECK_THROWS_AS(init_bitstring(4, bad), ConfigError);
}

TEST_CASE("circuits preserve norm and particle number") {
  std::mt19937_64 rng(57);
  std::uniform_real_distribution<Real> u(-kPi, kPi);
  Circuit c{6, 0.0, {}};
  for (int n = 0; n < 60; ++n) {
    const int q = static_cast<int>(rng() % 5);
    if (n % 2)
      c.gates.emplace_back(GivensGate{q, u(rng), u(rng)});
    else {
      const Real a = u(rng);
      c.gates.emplace_back(Matchgate{q, a, a});
    }
  }
  const std::vector<int> occ = {0, 2, 5};
  const Statevector psi = apply_circuit(init_bitstring(6, occ), c);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
  CHECK(std::abs(measure_density_matrix(psi).rho.trace().real() - 3.0) < 1e-10);
  CHECK_THROWS_AS(apply_circuit(init_bitstring(5, {}), c), ConfigError);
}
