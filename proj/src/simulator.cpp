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

#include "hcbq/simulator.hpp"

#include <bit>
#include <cmath>
#include <set>

#include "hcbq/linalg.hpp"

namespace hcbq {

namespace {

using Index = std::uint64_t;

void require_statevector_size(int qubits) {
  if (qubits < 1 || qubits > kStatevectorCap)
    throw ConfigError("statevector: " + std::to_string(qubits) + " qubits outside 1.." +
                      std::to_string(kStatevectorCap));
}

void require_oracle_size(int sites) {
  if (sites < 1 || sites > kOracleCap)
    throw ConfigError("dense oracle: " + std::to_string(sites) + " sites outside 1.." + std::to_string(kOracleCap));
}

void apply_two_qubit(VectorXc& amps, int q, const Matrix4c& m) {
  const Index b0 = Index{1} << q;
  const Index b1 = Index{1} << (q + 1);
  const auto dim = static_cast<Index>(amps.size());
  for (Index base = 0; base < dim; ++base) {
    if (base & (b0 | b1)) continue;
    const Index idx[4] = {base, base | b0, base | b1, base | b0 | b1};
    Eigen::Vector4cd local(amps(idx[0]), amps(idx[1]), amps(idx[2]), amps(idx[3]));
    local = m * local;
    for (int k = 0; k < 4; ++k) amps(idx[k]) = local(k);
  }
}

/// +1 / -1 parity of the occupied sites strictly between a and b.
Real string_sign(Index x, int a, int b) {
  const int lo = std::min(a, b);
  const int hi = std::max(a, b);
  if (hi - lo < 2) return 1.0;
  const Index mask = ((Index{1} << hi) - 1) & ~((Index{1} << (lo + 1)) - 1);
  return (std::popcount(x & mask) & 1) ? -1.0 : 1.0;
}

}  // namespace

PauliString& PauliString::set(int site, char letter) {
  if (site < 0 || site >= static_cast<int>(letters.size())) throw ConfigError("PauliString: site out of range");
  if (letter != 'I' && letter != 'X' && letter != 'Y' && letter != 'Z')
    throw ConfigError(std::string("PauliString: bad letter ") + letter);
  letters[static_cast<std::size_t>(site)] = letter;
  return *this;
}

Statevector init_bitstring(int qubits, std::span<const int> occupied) {
  require_statevector_size(qubits);
  Index idx = 0;
  for (int s : occupied) {
    if (s < 0 || s >= qubits) throw ConfigError("init_bitstring: site " + std::to_string(s) + " out of range");
    idx |= Index{1} << s;
  }
  Statevector out{qubits, VectorXc::Zero(static_cast<Eigen::Index>(Index{1} << qubits))};
  out.amplitudes(static_cast<Eigen::Index>(idx)) = 1.0;
  return out;
}

void apply_gate(VectorXc& amps, int qubits, const Gate& g) {
  (void)qubits;
  if (const auto* x = std::get_if<XGate>(&g)) {
    const Index bit = Index{1} << x->qubit;
    for (Index i = 0; i < static_cast<Index>(amps.size()); ++i)
      if (!(i & bit)) std::swap(amps(i), amps(i | bit));
  } else if (const auto* gv = std::get_if<GivensGate>(&g)) {
    apply_two_qubit(amps, gv->qubit, givens_unitary(*gv));
  } else if (const auto* mg = std::get_if<Matchgate>(&g)) {
    apply_two_qubit(amps, mg->qubit, matchgate_unitary(*mg));
  }
}

Statevector apply_circuit(const Statevector& s, const Circuit& c) {
  if (c.qubits != s.qubits)
    throw ConfigError("apply_circuit: circuit has " + std::to_string(c.qubits) + " qubits, state has " +
                      std::to_string(s.qubits));
  c.validate();
  Statevector out = s;
  for (const auto& g : c.gates) apply_gate(out.amplitudes, out.qubits, g);
  if (c.phase != 0.0) out.amplitudes *= std::exp(kI * c.phase);
  return out;
}

Real expectation(const Statevector& s, const PauliString& p) {
  if (static_cast<int>(p.letters.size()) != s.qubits) throw ConfigError("expectation: Pauli string length mismatch");
  Index flip = 0;
  for (int j = 0; j < s.qubits; ++j) {
    const char c = p.letters[static_cast<std::size_t>(j)];
    if (c == 'X' || c == 'Y') flip |= Index{1} << j;
  }
  Complex acc = 0.0;
  for (Index x = 0; x < static_cast<Index>(s.amplitudes.size()); ++x) {
    const Complex a = s.amplitudes(x);
    if (a == Complex(0.0)) continue;
    Complex phase = 1.0;
    for (int j = 0; j < s.qubits; ++j) {
      const bool bit = (x >> j) & 1;
      switch (p.letters[static_cast<std::size_t>(j)]) {
        case 'Y': phase *= bit ? -kI : kI; break;
        case 'Z': if (bit) phase = -phase; break;
        default: break;
      }
    }
    acc += std::conj(s.amplitudes(x ^ flip)) * phase * a;
  }
  if (std::abs(acc.imag()) > 1e-12) throw NumericalError("expectation: non-real value for a Hermitian Pauli string");
  return acc.real();
}

namespace {

template <typename Correlator>
DensityMatrix assemble_density_matrix(int L, Correlator&& corr) {
  MatrixXc rho = MatrixXc::Zero(L, L);
  auto pauli = [&](int a, char pa, int b, char pb) {
    PauliString p = PauliString::identity(L);
    p.set(a, pa);
    if (b >= 0) p.set(b, pb);
    return corr(p);
  };
  for (int j = 0; j < L; ++j) {
    rho(j, j) = 0.5 * (1.0 - pauli(j, 'Z', -1, 'I'));
    for (int l = j + 1; l < L; ++l) {
      const Real xx = pauli(j, 'X', l, 'X');
      const Real yy = pauli(j, 'Y', l, 'Y');
      const Real xy = pauli(j, 'X', l, 'Y');
      const Real yx = pauli(j, 'Y', l, 'X');
      rho(j, l) = 0.25 * Complex(xx + yy, xy - yx);
      rho(l, j) = std::conj(rho(j, l));
    }
  }
  return {rho};
}

}  // namespace

DensityMatrix measure_density_matrix(const Statevector& s) {
  return assemble_density_matrix(s.qubits, [&](const PauliString& p) { return expectation(s, p); });
}

DensityMatrix measure_density_matrix_sampled(const Statevector& s, std::uint64_t shots, std::mt19937_64& rng) {
  if (shots == 0) throw ConfigError("measure_density_matrix_sampled: need at least one shot");
  return assemble_density_matrix(s.qubits, [&](const PauliString& p) {
    const Real exact = expectation(s, p);
    const Real p_plus = std::clamp(0.5 * (1.0 + exact), 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(shots, p_plus);
    const auto plus = static_cast<Real>(draw(rng));
    return 2.0 * plus / static_cast<Real>(shots) - 1.0;
  });
}

int measurement_group_count(int sites) {
  int bits = 0;
  while ((1 << bits) < sites) ++bits;
  return 3 + 2 * bits;
}

CorrelationMatrix measure_fermion_correlations(const Statevector& s) {
  const int L = s.qubits;
  MatrixXc lam = MatrixXc::Zero(L, L);
  const auto dim = static_cast<Index>(s.amplitudes.size());
  for (Index x = 0; x < dim; ++x) {
    const Complex a = s.amplitudes(x);
    if (a == Complex(0.0)) continue;
    for (int j = 0; j < L; ++j) {
      if (!((x >> j) & 1)) continue;
      lam(j, j) += std::norm(a);
      // f^dag_i f_j moves the particle from j to i
      for (int i = 0; i < L; ++i) {
        if (i == j || ((x >> i) & 1)) continue;
        const Index y = (x & ~(Index{1} << j)) | (Index{1} << i);
        lam(i, j) += std::conj(s.amplitudes(y)) * string_sign(x, i, j) * a;
      }
    }
  }
  return {lam};
}

Real particle_number(const Statevector& s) {
  Real n = 0.0;
  for (Index x = 0; x < static_cast<Index>(s.amplitudes.size()); ++x)
    n += std::popcount(x) * std::norm(s.amplitudes(x));
  return n;
}

Statevector slater_to_statevector(const SlaterState& state) {
  const int L = state.sites();
  require_statevector_size(L);
  VectorXc psi = VectorXc::Zero(static_cast<Eigen::Index>(Index{1} << L));
  psi(0) = 1.0;
  for (int n = state.particles() - 1; n >= 0; --n) {
    VectorXc next = VectorXc::Zero(psi.size());
    for (Index x = 0; x < static_cast<Index>(psi.size()); ++x) {
      if (psi(x) == Complex(0.0)) continue;
      for (int i = 0; i < L; ++i) {
        if ((x >> i) & 1) continue;
        const Real sign = (std::popcount(x & ((Index{1} << i) - 1)) & 1) ? -1.0 : 1.0;
        next(x | (Index{1} << i)) += sign * state.modes(i, n) * psi(x);
      }
    }
    psi = std::move(next);
  }
  return {L, psi};
}

MatrixXr many_body_hamiltonian(const HamiltonianSpec& spec) {
  spec.validate();
  const int L = spec.sites;
  require_oracle_size(L);
  const auto dim = static_cast<Index>(Index{1} << L);
  MatrixXr h = MatrixXr::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const int bonds = spec.boundary == Boundary::periodic ? L : L - 1;
  for (Index x = 0; x < dim; ++x) {
    for (int i = 0; i < L; ++i)
      if ((x >> i) & 1) h(x, x) += superlattice_potential(spec, i);
    // -w (b^dag_a b_c + h.c.) = -(w/2)(X_a X_c + Y_a Y_c): plain spin flips, no strings
    for (int b = 0; b < bonds; ++b) {
      const int a = b;
      const int c = (b + 1) % L;
      const bool na = (x >> a) & 1;
      const bool nc = (x >> c) & 1;
      if (na == nc) continue;
      const Index y = x ^ (Index{1} << a) ^ (Index{1} << c);
      h(y, x) -= spec.hopping;
    }
  }
  return h;
}

ExactEvolver::ExactEvolver(const HamiltonianSpec& spec) : sites_(spec.sites) {
  Eigen::SelfAdjointEigenSolver<MatrixXr> solver(many_body_hamiltonian(spec));
  if (solver.info() != Eigen::Success) throw NumericalError("ExactEvolver: eigensolver failed");
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Statevector ExactEvolver::evolve(const Statevector& s, Real t) const {
  if (s.qubits != sites_) throw ConfigError("ExactEvolver: state size mismatch");
  VectorXc coeff = vectors_.transpose().cast<Complex>() * s.amplitudes;
  for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff(k) *= std::exp(-kI * energies_(k) * t);
  return {sites_, vectors_.cast<Complex>() * coeff};
}

Statevector evolve_exact(const HamiltonianSpec& spec, const Statevector& s, Real t) {
  return ExactEvolver(spec).evolve(s, t);
}

DensityMatrix exact_hcb_reference(const HamiltonianSpec& spec, std::span<const int> occupied, Real t) {
  require_oracle_size(spec.sites);
  const Statevector s0 = init_bitstring(spec.sites, occupied);
  return measure_density_matrix(evolve_exact(spec, s0, t));
}

}  // namespace hcbq
