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

#include <algorithm>

#include "hcbq/linalg.hpp"
#include "hcbq/model.hpp"

using namespace hcbq;

namespace {
HamiltonianSpec chain(int L, Boundary b = Boundary::open) { return {L, 1.0, b, std::nullopt}; }
HamiltonianSpec lattice(int L, int p, Real V, Boundary b = Boundary::periodic) { return {L, 1.0, b, Superlattice{V, p}}; }
}  // namespace

TEST_CASE("two-site open chain") {
  const MatrixXc h = build_hopping_matrix(chain(2));
  MatrixXc expected(2, 2);
  expected << 0, -1, -1, 0;
  CHECK(h == expected);
}

TEST_CASE("periodic wrap element") {
  const MatrixXc h = build_hopping_matrix(chain(4, Boundary::periodic));
  CHECK(h(0, 3) == Complex(-1.0));
  CHECK(h(3, 0) == Complex(-1.0));
  CHECK(h(0, 2) == Complex(0.0));
  CHECK(build_hopping_matrix(chain(4))(0, 3) == Complex(0.0));
}

TEST_CASE("hopping matrix is exactly hermitian") {
  for (auto spec : {chain(7), chain(8, Boundary::periodic), lattice(12, 3, 5.0), lattice(16, 4, 100.0, Boundary::open)}) {
    const MatrixXc h = build_hopping_matrix(spec);
    CHECK(h == h.adjoint());
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(chain(1).validate(), ConfigError);
  CHECK_THROWS_AS(lattice(10, 4, 1.0).validate(), ConfigError);
  CHECK_THROWS_AS(lattice(8, 0, 1.0).validate(), ConfigError);
  CHECK_NOTHROW(lattice(8, 4, 1.0).validate());
  CHECK_THROWS_AS(build_hopping_matrix(lattice(9, 2, 1.0)), ConfigError);
}

TEST_CASE("period-two superlattice alternates and splits into two bands") {
  const auto spec = lattice(8, 2, 100.0);
  const MatrixXc h = build_hopping_matrix(spec);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(h(i, i).real()) == doctest::Approx(100.0));
  for (int i = 0; i + 1 < 8; ++i) CHECK(h(i, i).real() == doctest::Approx(-h(i + 1, i + 1).real()));
  const VectorXr e = eigh(h).values;
  // four levels near -V, four near +V
  CHECK(e(3) < -99.0);
  CHECK(e(4) > 99.0);
  CHECK(e(4) - e(3) == doctest::Approx(200.0).epsilon(0.01));
}

TEST_CASE("potential minima sit on every p-th site") {
  const auto spec = lattice(16, 4, 100.0);
  for (int i = 0; i < 16; ++i) {
    const Real v = superlattice_potential(spec, i);
    if ((i + 1) % 4 == 0)
      CHECK(v == doctest::Approx(-100.0));
    else
      CHECK(v > -100.0 + 1e-6);
  }
}

TEST_CASE("trace of h equals the summed potential") {
  const auto spec = lattice(12, 3, 7.5);
  const MatrixXc h = build_hopping_matrix(spec);
  Real pot = 0.0;
  for (int i = 0; i < 12; ++i) pot += superlattice_potential(spec, i);
  CHECK(eigh(h).values.sum() == doctest::Approx(pot).epsilon(1e-12));
}

TEST_CASE("dispersion") {
  const auto spec = chain(16, Boundary::periodic);
  CHECK(dispersion(spec, 0) == doctest::Approx(-2.0));
  CHECK(std::abs(dispersion(spec, 4)) < 1e-14);
  CHECK(dispersion(spec, 8) == doctest::Approx(2.0));
  CHECK_THROWS_AS(dispersion(chain(16), 1), ConfigError);
}

TEST_CASE("periodic spectrum matches the cosine band") {
  for (int L : {5, 8, 13}) {
    const auto spec = chain(L, Boundary::periodic);
    std::vector<Real> expected;
    for (int k = 0; k < L; ++k) expected.push_back(dispersion(spec, k));
    std::sort(expected.begin(), expected.end());
    const VectorXr e = eigh(build_hopping_matrix(spec)).values;
    for (int k = 0; k < L; ++k) CHECK(std::abs(e(k) - expected[static_cast<std::size_t>(k)]) < 1e-10);
  }
}

TEST_CASE("superlattice modes") {
  const auto small = lattice(8, 2, 100.0);
  const VectorXc q0 = superlattice_modes(small, 0);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(q0(i)) == doctest::Approx(i % 2 == 1 ? 0.5 : 0.0));
  for (int i = 1; i < 8; i += 2) CHECK(std::abs(q0(i) - Complex(0.5)) < 1e-15);

  // each approximate mode lies in the exact lowest band
  const auto spec = lattice(16, 4, 100.0);
  const Eigensystem eig = eigh(build_hopping_matrix(spec));
  const MatrixXc band = eig.vectors.leftCols(4);
  for (int q = 0; q < 4; ++q) {
    const VectorXc v = superlattice_modes(spec, q);
    CHECK(v.norm() == doctest::Approx(1.0));
    CHECK((band.adjoint() * v).norm() > 0.99);
  }
  CHECK_THROWS_AS(superlattice_modes(spec, 4), ConfigError);
  CHECK_THROWS_AS(superlattice_modes(chain(8), 0), ConfigError);
}

TEST_CASE("boundary names round trip") {
  CHECK(boundary_from_string(to_string(Boundary::open)) == Boundary::open);
  CHECK(boundary_from_string(to_string(Boundary::periodic)) == Boundary::periodic);
  CHECK_THROWS_AS(boundary_from_string("twisted"), ConfigError);
}
