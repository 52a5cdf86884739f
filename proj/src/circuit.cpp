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

#include "hcbq/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace hcbq {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

void Circuit::validate() const {
  if (qubits < 1) throw ConfigError("circuit: qubit count must be positive");
  for (std::size_t n = 0; n < gates.size(); ++n) {
    const int q = gate_qubit(gates[n]);
    const int w = gate_width(gates[n]);
    if (q < 0 || q + w > qubits)
      throw ConfigError("circuit: gate " + std::to_string(n) + " (" + gate_name(gates[n]) + ") on qubit " +
                        std::to_string(q) + " exceeds " + std::to_string(qubits) + " qubits");
  }
}

Matrix4c matchgate_unitary(const Matchgate& g) {
  // XX + YY couples |00>,|11> with alpha - beta and |10>,|01> with alpha + beta
  const Real d = g.alpha - g.beta;
  const Real s = g.alpha + g.beta;
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(3, 3) = std::cos(d);
  m(0, 3) = m(3, 0) = kI * std::sin(d);
  m(1, 1) = m(2, 2) = std::cos(s);
  m(1, 2) = m(2, 1) = kI * std::sin(s);
  return m;
}

Matrix4c givens_unitary(const GivensGate& g) {
  const Real c = std::cos(g.theta);
  const Real s = std::sin(g.theta);
  const Complex e = std::exp(kI * g.phi);
  // one-particle block is the transpose of the mode map g
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = c;
  m(2, 1) = -s * e;
  m(1, 2) = s;
  m(2, 2) = c * e;
  m(3, 3) = e;
  return m;
}

Matrix2c pauli_x() {
  Matrix2c x;
  x << 0, 1, 1, 0;
  return x;
}

int gate_qubit(const Gate& g) {
  return std::visit([](const auto& x) { return x.qubit; }, g);
}

int gate_width(const Gate& g) {
  return std::visit(overloaded{[](const XGate&) { return 1; }, [](const auto&) { return 2; }}, g);
}

std::string gate_name(const Gate& g) {
  return std::visit(overloaded{[](const XGate&) { return std::string("x"); },
                               [](const GivensGate&) { return std::string("givens"); },
                               [](const Matchgate&) { return std::string("match"); }},
                    g);
}

std::vector<std::vector<std::size_t>> layers(const Circuit& c) {
  std::vector<int> busy_until(static_cast<std::size_t>(std::max(c.qubits, 0)), 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t n = 0; n < c.gates.size(); ++n) {
    const int q = gate_qubit(c.gates[n]);
    const int w = gate_width(c.gates[n]);
    int level = 0;
    for (int k = q; k < q + w; ++k) level = std::max(level, busy_until[k]);
    for (int k = q; k < q + w; ++k) busy_until[k] = level + 1;
    if (static_cast<std::size_t>(level) >= out.size()) out.resize(level + 1);
    out[level].push_back(n);
  }
  return out;
}

int depth(const Circuit& c) { return static_cast<int>(layers(c).size()); }

int cnot_count(const Circuit& c) {
  int n = 0;
  for (const auto& g : c.gates) {
    if (std::holds_alternative<Matchgate>(g)) n += 3;
    if (std::holds_alternative<GivensGate>(g)) n += 2;
  }
  return n;
}

int gate_count(const Circuit& c, bool matchgates_only) {
  if (!matchgates_only) return static_cast<int>(c.gates.size());
  return static_cast<int>(std::count_if(c.gates.begin(), c.gates.end(),
                                        [](const Gate& g) { return std::holds_alternative<Matchgate>(g); }));
}

}  // namespace hcbq
