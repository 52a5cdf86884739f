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

#include <optional>
#include <string>

#include "hcbq/types.hpp"

namespace hcbq {

enum class Boundary { open, periodic };

/// Cosine superlattice V * cos(...) with period p (in sites).
struct Superlattice {
  Real amplitude = 100.0;
  int period = 4;
};

/// Single-particle lattice description. Sites are 0-based internally; the
/// JSON form and the CLI document 1-based positions where they print sites.
struct HamiltonianSpec {
  int sites = 2;
  Real hopping = 1.0;
  Boundary boundary = Boundary::open;
  std::optional<Superlattice> potential;

  /// Throws ConfigError when L < 2 or the period does not divide L.
  void validate() const;

  HamiltonianSpec without_potential() const {
    HamiltonianSpec s = *this;
    s.potential.reset();
    return s;
  }
};

/// L x L single-particle matrix h with H = sum_mn f^dag_m h_mn f_n.
using HoppingMatrix = MatrixXc;

/// On-site superlattice energy at 0-based site i.
///
/// The potential is V cos(2 pi p j / L) with j the 1-based site, evaluated
/// with the wavelength set by the period p and shifted by half a period so
/// that the minima (-V) sit on sites j = p, 2p, ..., L. This is the layout
/// whose low band is spanned by the localized modes of superlattice_modes.
Real superlattice_potential(const HamiltonianSpec& spec, int site);

HoppingMatrix build_hopping_matrix(const HamiltonianSpec& spec);

/// -2 w cos(2 pi k / L); periodic chains only.
Real dispersion(const HamiltonianSpec& spec, int k);

/// Approximate low-band mode q of a deep superlattice: amplitude sqrt(p/L)
/// on sites j = n p (1-based), phase exp(i n q 2 pi / (L/p)).
VectorXc superlattice_modes(const HamiltonianSpec& spec, int q);

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

}  // namespace hcbq
