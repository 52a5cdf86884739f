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

#include "hcbq/model.hpp"

#include <cmath>
#include <iostream>

namespace hcbq {

void HamiltonianSpec::validate() const {
  if (sites < 2) throw ConfigError("HamiltonianSpec: need at least 2 sites, got " + std::to_string(sites));
  if (!std::isfinite(hopping)) throw ConfigError("HamiltonianSpec: hopping must be finite");
  if (potential) {
    if (potential->period <= 0) throw ConfigError("HamiltonianSpec: superlattice period must be positive");
    if (sites % potential->period != 0)
      throw ConfigError("HamiltonianSpec: period " + std::to_string(potential->period) + " does not divide L=" +
                        std::to_string(sites));
    if (!std::isfinite(potential->amplitude)) throw ConfigError("HamiltonianSpec: potential amplitude must be finite");
  }
}

Real superlattice_potential(const HamiltonianSpec& spec, int site) {
  if (!spec.potential) return 0.0;
  const int j = site + 1;
  const int p = spec.potential->period;
  // reduce j mod p before the cosine so the minima are exactly -V
  return -spec.potential->amplitude * std::cos(2.0 * kPi * static_cast<Real>(j % p) / p);
}

HoppingMatrix build_hopping_matrix(const HamiltonianSpec& spec) {
  spec.validate();
  const int L = spec.sites;
  HoppingMatrix h = HoppingMatrix::Zero(L, L);
  const int bonds = spec.boundary == Boundary::periodic ? L : L - 1;
  for (int b = 0; b < bonds; ++b) {
    const int a = b;
    const int c = (b + 1) % L;
    h(a, c) -= spec.hopping;
    h(c, a) -= spec.hopping;
  }
  for (int i = 0; i < L; ++i) h(i, i) = superlattice_potential(spec, i);
  return h;
}

Real dispersion(const HamiltonianSpec& spec, int k) {
  spec.validate();
  if (spec.boundary != Boundary::periodic)
    throw ConfigError("dispersion: open chains have no momentum labels, only eigenstate indices");
  return -2.0 * spec.hopping * std::cos(2.0 * kPi * k / spec.sites);
}

VectorXc superlattice_modes(const HamiltonianSpec& spec, int q) {
  spec.validate();
  if (!spec.potential) throw ConfigError("superlattice_modes: spec has no potential");
  const int p = spec.potential->period;
  const int cells = spec.sites / p;
  if (q < 0 || q >= cells) throw ConfigError("superlattice_modes: q out of range 0.." + std::to_string(cells - 1));
  if (std::abs(spec.potential->amplitude) < 10.0 * std::abs(spec.hopping))
    std::clog << "warning: superlattice_modes is a deep-lattice approximation; V=" << spec.potential->amplitude
              << " is below 10w\n";
  VectorXc v = VectorXc::Zero(spec.sites);
  const Real amp = std::sqrt(static_cast<Real>(p) / spec.sites);
  for (int n = 1; n <= cells; ++n) {
    v(n * p - 1) = amp * std::exp(kI * (2.0 * kPi * n * q / cells));
  }
  return v;
}

std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "open"; }

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic" || s == "pbc") return Boundary::periodic;
  if (s == "open" || s == "obc") return Boundary::open;
  throw ConfigError("unknown boundary '" + s + "' (expected open or periodic)");
}

}  // namespace hcbq
