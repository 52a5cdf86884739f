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
#include <limits>
#include <random>
#include <vector>

#include "hcbq/ensembles.hpp"
#include "hcbq/linalg.hpp"
#include "oracles.hpp"

using namespace hcbq;

namespace {
HamiltonianSpec chain(int L, Boundary b = Boundary::open) { return {L, 1.0, b, std::nullopt}; }
Real max_abs(const MatrixXc& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
MatrixXc generator(const ModeBasis& basis, const VectorXr& lambda) {
  return basis.modes * lambda.cast<Complex>().asDiagonal() * basis.modes.adjoint();
}
}  // namespace

TEST_CASE("multiplier identities") {
  CHECK(gge_multiplier(0.5) == 0.0);
  CHECK(gge_multiplier(1.0 / (1.0 + std::exp(1.0))) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::isfinite(gge_multiplier(0.0)));
  CHECK(std::isfinite(gge_multiplier(1.0)));
  CHECK(fermi_occupation(gge_multiplier(0.3)) == doctest::Approx(0.3));
  CHECK(fermi_occupation(std::numeric_limits<Real>::infinity()) == 0.0);
  CHECK(fermi_occupation(-std::numeric_limits<Real>::infinity()) == 1.0);
  CHECK(fermi_occupation(-800.0) == 1.0);
}

TEST_CASE("momentum basis matches the momentum distribution") {
  std::mt19937_64 rng(21);
  const auto spec = chain(9, Boundary::periodic);
  const ModeBasis basis = mode_basis(spec);
  CHECK(basis.momentum);
  CHECK((basis.modes.adjoint() * basis.modes - MatrixXc::Identity(9, 9)).norm() < 1e-12);
  const SlaterState s{oracle::random_modes(9, 4, rng)};
  const VectorXr n = mode_occupations(s, basis);
  const MomentumDistribution d = momentum_distribution(fermion_correlations(s));
  CHECK((n - d.occupation).cwiseAbs().maxCoeff() < 1e-12);
  // each plane wave diagonalizes h with its dispersion value
  const MatrixXc h = build_hopping_matrix(spec);
  CHECK(max_abs(basis.modes.adjoint() * h * basis.modes - MatrixXc(basis.energies.cast<Complex>().asDiagonal())) <
        1e-12);
}

TEST_CASE("gge reproduces the initial mode occupations") {
  std::mt19937_64 rng(22);
  for (auto spec : {chain(8, Boundary::periodic), chain(7)}) {
    const SlaterState s{oracle::random_modes(spec.sites, 3, rng)};
    const GGESpec gge = gge_from_initial(s, spec);
    const VectorXr n0 = mode_occupations(s, gge.basis);
    for (Eigen::Index k = 0; k < n0.size(); ++k) CHECK(fermi_occupation(gge.multipliers(k)) == doctest::Approx(n0(k)));
    // the ensemble's own fermion correlations carry the same occupations
    const MatrixXc lam = ensemble_fermion_correlations(gge.basis, gge.multipliers).lambda;
    const VectorXr ne = (gge.basis.modes.transpose() * lam * gge.basis.modes.conjugate()).diagonal().real();
    CHECK((ne - n0).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("flat occupations give a flat ensemble") {
  const auto spec = chain(10, Boundary::periodic);
  const std::vector<int> occ = {2, 3, 4, 5};
  const SlaterState fock = fock_state(10, occ);
  const GGESpec gge = gge_from_initial(fock, spec);
  for (Eigen::Index k = 1; k < gge.multipliers.size(); ++k)
    CHECK(gge.multipliers(k) == doctest::Approx(gge.multipliers(0)));
  const MomentumDistribution d = ensemble_momentum_distribution(gge);
  for (Eigen::Index k = 0; k < d.occupation.size(); ++k) CHECK(d.occupation(k) == doctest::Approx(0.4));

  const GESpec ge = ge_fit(fock, build_hopping_matrix(spec));
  CHECK(std::abs(ge.beta) < 1e-10);
  CHECK(std::isnan(ge.mu));
  const MomentumDistribution dg = ensemble_momentum_distribution(ge);
  CHECK((dg.occupation - d.occupation).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("ensemble density matrix edge cases") {
  const ModeBasis basis = mode_basis(build_hopping_matrix(chain(5)));
  const VectorXr empty = VectorXr::Constant(5, std::numeric_limits<Real>::infinity());
  CHECK(max_abs(ensemble_density_matrix(basis, empty).rho) == 0.0);

  ModeBasis one;
  one.modes = MatrixXc::Identity(1, 1);
  one.energies = VectorXr::Zero(1);
  one.labels = {0};
  for (Real lam : {-2.0, 0.0, 0.7}) {
    const DensityMatrix r = ensemble_density_matrix(one, VectorXr::Constant(1, lam));
    CHECK(r.rho(0, 0).real() == doctest::Approx(std::exp(-lam) / (1 + std::exp(-lam))));
  }
  CHECK_THROWS_AS(ensemble_density_matrix(basis, VectorXr::Zero(4)), ConfigError);
}

TEST_CASE("ensemble density matrix equals the dense thermal trace") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<Real> u(-2.0, 2.0);
  for (int L : {3, 5, 6, 8}) {
    const HoppingMatrix h = build_hopping_matrix(chain(L, L % 2 ? Boundary::open : Boundary::periodic));
    const ModeBasis basis = L == 5 ? ModeBasis{oracle::random_unitary(5, rng), VectorXr::Zero(5), {0, 1, 2, 3, 4}}
                                   : mode_basis(h);
    VectorXr lam(L);
    for (int k = 0; k < L; ++k) lam(k) = u(rng);
    const MatrixXc expected = oracle::ensemble_rho(generator(basis, lam));
    const DensityMatrix rho = ensemble_density_matrix(basis, lam);
    CHECK(max_abs(rho.rho - expected) < 1e-7);
    CHECK(eigh(rho.rho).values.minCoeff() > -1e-9);
    CHECK(ensemble_diagonal_consistency(basis, lam) < 1e-10);
  }
}

TEST_CASE("gge from a random slater state matches the dense ensemble") {
  std::mt19937_64 rng(24);
  const auto spec = chain(6, Boundary::periodic);
  const SlaterState s{oracle::random_modes(6, 3, rng)};
  const GGESpec gge = gge_from_initial(s, spec);
  const MatrixXc expected = oracle::ensemble_rho(generator(gge.basis, gge.multipliers));
  CHECK(max_abs(ensemble_density_matrix(gge).rho - expected) < 1e-7);
}

TEST_CASE("ge fit round trip") {
  const HoppingMatrix h = build_hopping_matrix(chain(12, Boundary::periodic));
  const GESpec known = ge_from_parameters(h, 0.7, 0.3);
  const GESpec fit = ge_fit_targets(h, known.target_energy, known.target_particles);
  CHECK(std::abs(fit.beta - 0.7) < 1e-8);
  CHECK(std::abs(fit.mu - 0.3) < 1e-8);
  CHECK(fit.residual < 1e-8);

  const HoppingMatrix hs = build_hopping_matrix({10, 1.0, Boundary::open, Superlattice{3.0, 5}});
  const GESpec k2 = ge_from_parameters(hs, 2.5, -0.4);
  const GESpec f2 = ge_fit_targets(hs, k2.target_energy, k2.target_particles);
  CHECK(std::abs(f2.beta - 2.5) < 1e-8);
  CHECK(std::abs(f2.mu + 0.4) < 1e-8);
}

TEST_CASE("ge conserves energy and particle number") {
  std::mt19937_64 rng(25);
  const HoppingMatrix h = build_hopping_matrix(chain(10));
  const SlaterState s{oracle::random_modes(10, 4, rng)};
  const GESpec ge = ge_fit(s, h);
  const MatrixXc lam0 = fermion_correlations(s).lambda;
  const MatrixXc lam = ensemble_fermion_correlations(ge.basis, ge.multipliers()).lambda;
  CHECK(std::abs(lam.trace().real() - lam0.trace().real()) < 1e-8);
  const Real e0 = std::real((h.array() * lam0.array()).sum());
  const Real e = std::real((h.array() * lam.array()).sum());
  CHECK(std::abs(e - e0) < 1e-8);
}

TEST_CASE("infinite temperature limit is uniform") {
  const HoppingMatrix h = build_hopping_matrix(chain(8));
  const GESpec ge = ge_from_parameters(h, 0.0, 0.0);
  const MatrixXc lam = ensemble_fermion_correlations(ge.basis, ge.multipliers()).lambda;
  for (int i = 0; i < 8; ++i) CHECK(lam(i, i).real() == doctest::Approx(0.5));
}

TEST_CASE("ensembles coincide when the multipliers agree") {
  const HoppingMatrix h = build_hopping_matrix(chain(7));
  const GESpec ge = ge_from_parameters(h, 1.3, 0.2);
  GGESpec gge;
  gge.basis = ge.basis;
  gge.multipliers = ge.multipliers();
  CHECK((ensemble_momentum_distribution(gge).occupation - ensemble_momentum_distribution(ge).occupation)
            .cwiseAbs()
            .maxCoeff() < 1e-14);
}

TEST_CASE("superlattice ground state separates gge from ge") {
  const HamiltonianSpec initial{16, 1.0, Boundary::periodic, Superlattice{100.0, 4}};
  const HamiltonianSpec quench = initial.without_potential();
  const SlaterState s = ground_state(build_hopping_matrix(initial), 3);
  const GGESpec gge = gge_from_initial(s, quench);
  const GESpec ge = ge_fit(s, build_hopping_matrix(quench));
  const VectorXr a = ensemble_momentum_distribution(gge).occupation;
  const VectorXr b = ensemble_momentum_distribution(ge).occupation;
  CHECK((a - b).cwiseAbs().maxCoeff() > 1e-7);
  CHECK(a.sum() == doctest::Approx(3.0));
  CHECK(b.sum() == doctest::Approx(3.0));
}

TEST_CASE("large chains stay finite") {
  const HamiltonianSpec spec{48, 1.0, Boundary::periodic, std::nullopt};
  const HamiltonianSpec initial{48, 1.0, Boundary::periodic, Superlattice{100.0, 4}};
  const SlaterState s = ground_state(build_hopping_matrix(initial), 7);
  const GGESpec gge = gge_from_initial(s, spec);
  const DensityMatrix rho = ensemble_density_matrix(gge);
  CHECK(rho.rho.allFinite());
  CHECK(rho.rho.trace().real() == doctest::Approx(7.0));
}
