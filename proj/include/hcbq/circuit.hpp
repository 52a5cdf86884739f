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

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "hcbq/types.hpp"

namespace hcbq {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

struct XGate {
  int qubit = 0;
};

/// Number-conserving rotation on qubits (qubit, qubit + 1). In the
/// one-particle sector it maps f^dag -> g f^dag with
/// g = [[cos t, -sin t e^{i phi}], [sin t, cos t e^{i phi}]].
/// phi = 0 is the plain real rotation.
struct GivensGate {
  int qubit = 0;
  Real theta = 0.0;
  Real phi = 0.0;
};

/// exp[i (alpha X_q X_{q+1} + beta Y_q Y_{q+1})].
struct Matchgate {
  int qubit = 0;
  Real alpha = 0.0;
  Real beta = 0.0;
};

using Gate = std::variant<XGate, GivensGate, Matchgate>;

/// Ordered gate list; gates[0] acts first. Qubit j carries bit j of the
/// computational basis index. `phase` is a global phase e^{i phase}
/// multiplying the whole circuit unitary.
struct Circuit {
  int qubits = 0;
  Real phase = 0.0;
  std::vector<Gate> gates;

  /// Throws ConfigError on out-of-range qubit indices.
  void validate() const;
};

/// 4x4 matrices use the local index b_q + 2 b_{q+1}.
Matrix4c matchgate_unitary(const Matchgate& g);
Matrix4c givens_unitary(const GivensGate& g);
Matrix2c pauli_x();

/// Lowest qubit touched by the gate and the number of qubits it spans.
int gate_qubit(const Gate& g);
int gate_width(const Gate& g);

/// ASAP layering: each layer holds gate indices that touch disjoint qubits.
std::vector<std::vector<std::size_t>> layers(const Circuit& c);
int depth(const Circuit& c);

/// Equivalent-CNOT cost: 3 per matchgate, 2 per Givens rotation.
int cnot_count(const Circuit& c);
int gate_count(const Circuit& c, bool matchgates_only = false);

std::string gate_name(const Gate& g);

}  // namespace hcbq
