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
#include <vector>

#include "hcbq/circuit.hpp"
#include "hcbq/model.hpp"

namespace hcbq {

using Matrix6r = Eigen::Matrix<Real, 6, 6>;
using Matrix8c = Eigen::Matrix<Complex, 8, 8>;

/// Product formula for exp(-i H t). Order 1: nSteps repetitions of one
/// layer on bonds 0, 2, 4, ... followed by one layer on bonds 1, 3, ....
/// Each bond gate is Matchgate(i, w dt / 2, w dt / 2) with dt = t / nSteps.
/// Order 2 is the symmetric split (half even layer, odd layer, half even
/// layer), with neighbouring half layers of consecutive steps fused.
///
/// Throws ConfigError for periodic chains, for an on-site potential (no
/// matchgate carries Z rotations), and for nSteps = 0 with t != 0.
Circuit trotter_circuit(const HamiltonianSpec& spec, Real t, int nSteps, int order = 1);

/// Angle sum on one bond, reduced to (-pi, pi].
Matchgate fuse(const Matchgate& a, const Matchgate& b);

/// Reduce an angle to (-pi, pi].
Real wrap_angle(Real x);

/// Majorana rotation R with U gamma_p U^dag = sum_q R_pq gamma_q, for a gate
/// on local bond 0 or 1 of three qubits. Time-ordered products compose as
/// R(g1 then g2) = R(g1) R(g2).
Matrix6r majorana_rotation(const Matchgate& g, int local_bond);

/// 8x8 unitary of a gate on local bond 0 (qubits 0, 1) or 1 (qubits 1, 2).
Matrix8c embed_three_qubit(const Matchgate& g, int local_bond);

struct TurnoverResult {
  Matchgate g4, g5, g6;
  /// U(g3 g2 g1) = e^{i phase} U(g6 g5 g4).
  Real phase = 0.0;
  /// Frobenius norm of U_lhs - e^{i phase} U_rhs.
  Real residual = 0.0;
  int seeds_tried = 0;
};

inline constexpr Real kTurnoverTolerance = 1e-10;

/// Rewrites g1, g2, g3 (bonds a, b, a with |a - b| = 1, g1 acting first)
/// into g4, g5, g6 on bonds b, a, b. Levenberg-Marquardt on the 6x6
/// Majorana rotation, retried from 8 octant seeds; throws NumericalError if
/// none reaches kTurnoverTolerance.
TurnoverResult turnover(const Matchgate& g1, const Matchgate& g2, const Matchgate& g3);

struct CompressReport {
  int input_depth = 0;
  int input_gates = 0;
  int depth = 0;
  int gates = 0;
  int cnots = 0;
  std::int64_t turnovers = 0;
  Real max_turnover_residual = 0.0;
  bool unchanged = false;
};

/// Compress a brick-pattern matchgate circuit to at most L layers holding
/// L(L-1)/2 gates. Circuits of depth <= L come back unchanged. Throws
/// ConfigError naming the offending gate for non-matchgate gates or a broken
/// brick pattern.
Circuit compress(const Circuit& c, CompressReport* report = nullptr);

/// compress of `step` repeated `reps` times, by repeated squaring of the
/// compressed form; cost grows with log(reps).
Circuit compress_power(const Circuit& step, std::uint64_t reps, CompressReport* report = nullptr);

/// compress_power of a single Trotter step of length t / nSteps.
Circuit trotter_compressed(const HamiltonianSpec& spec, Real t, std::uint64_t nSteps, int order = 1,
                           CompressReport* report = nullptr);

/// Dense 2^L unitary including the global phase; L <= 12.
MatrixXc circuit_unitary(const Circuit& c);

/// min over phi of ||a - e^{i phi} b||_F.
Real phase_adjusted_distance(const MatrixXc& a, const MatrixXc& b);

}  // namespace hcbq
