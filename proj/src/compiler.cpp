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

#include "hcbq/compiler.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "hcbq/simulator.hpp"

namespace hcbq {

Circuit trotter_circuit(const HamiltonianSpec& spec, Real t, int nSteps, int order) {
  spec.validate();
  if (spec.boundary == Boundary::periodic)
    throw ConfigError("trotter_circuit: periodic chains are not supported (the wrap bond breaks the brick pattern)");
  if (spec.potential)
    throw ConfigError("trotter_circuit: on-site potentials have no matchgate form; quench Hamiltonian must be pure hopping");
  if (nSteps < 0) throw ConfigError("trotter_circuit: nSteps must be non-negative");
  if (order != 1 && order != 2) throw ConfigError("trotter_circuit: order must be 1 or 2");
  Circuit c;
  c.qubits = spec.sites;
  if (t == 0.0) return c;
  if (nSteps == 0) throw ConfigError("trotter_circuit: nSteps = 0 requires t = 0");
  const Real angle = 0.5 * spec.hopping * t / nSteps;
  const int bonds = spec.sites - 1;
  c.gates.reserve(static_cast<std::size_t>(nSteps) * bonds);
  auto layer = [&](int parity, Real a) {
    for (int b = parity; b < bonds; b += 2) c.gates.emplace_back(Matchgate{b, a, a});
  };
  if (order == 1) {
    for (int step = 0; step < nSteps; ++step) {
      layer(0, angle);
      layer(1, angle);
    }
    return c;
  }
  layer(0, angle / 2);
  for (int step = 0; step < nSteps; ++step) {
    layer(1, angle);
    layer(0, step + 1 < nSteps ? angle : angle / 2);
  }
  return c;
}

Real wrap_angle(Real x) {
  Real y = std::remainder(x, 2 * kPi);
  if (y <= -kPi) y += 2 * kPi;
  return y;
}

Matchgate fuse(const Matchgate& a, const Matchgate& b) {
  if (a.qubit != b.qubit)
    throw ConfigError("fuse: gates on bonds " + std::to_string(a.qubit) + " and " + std::to_string(b.qubit));
  return {a.qubit, wrap_angle(a.alpha + b.alpha), wrap_angle(a.beta + b.beta)};
}

namespace {

bool is_identity(const Matchgate& g) { return wrap_angle(g.alpha) == 0.0 && wrap_angle(g.beta) == 0.0; }

// XX on bond j rotates Majoranas (2j+1, 2j+2), YY rotates (2j, 2j+3).
struct PlaneRotation {
  Matrix6r r, d_alpha, d_beta;
};

PlaneRotation plane_rotation(Real alpha, Real beta, int bond) {
  PlaneRotation out{Matrix6r::Identity(), Matrix6r::Zero(), Matrix6r::Zero()};
  auto set = [](Matrix6r& r, Matrix6r& d, int p, int q, Real angle, Real sign) {
    const Real c = std::cos(2 * angle);
    const Real s = std::sin(2 * angle);
    r(p, p) = r(q, q) = c;
    r(p, q) = -sign * s;
    r(q, p) = sign * s;
    d(p, p) = d(q, q) = -2 * s;
    d(p, q) = -2 * sign * c;
    d(q, p) = 2 * sign * c;
  };
  set(out.r, out.d_alpha, 2 * bond + 1, 2 * bond + 2, alpha, 1.0);
  set(out.r, out.d_beta, 2 * bond, 2 * bond + 3, beta, -1.0);
  return out;
}

using Params = Eigen::Matrix<Real, 6, 1>;

// R(x) = R4 R5 R6 and its 36 x 6 Jacobian.
void rhs_rotation(const Params& x, int bond_b, int bond_a, Matrix6r& r, Eigen::Matrix<Real, 36, 6>& jac) {
  const std::array<PlaneRotation, 3> f = {plane_rotation(x(0), x(1), bond_b), plane_rotation(x(2), x(3), bond_a),
                                          plane_rotation(x(4), x(5), bond_b)};
  r = f[0].r * f[1].r * f[2].r;
  const std::array<Matrix6r, 6> d = {f[0].d_alpha * f[1].r * f[2].r, f[0].d_beta * f[1].r * f[2].r,
                                     f[0].r * f[1].d_alpha * f[2].r, f[0].r * f[1].d_beta * f[2].r,
                                     f[0].r * f[1].r * f[2].d_alpha, f[0].r * f[1].r * f[2].d_beta};
  for (int k = 0; k < 6; ++k) jac.col(k) = Eigen::Map<const Eigen::Matrix<Real, 36, 1>>(d[k].data());
}

bool levenberg_marquardt(const Matrix6r& target, int bond_b, int bond_a, Params& x) {
  Matrix6r r;
  Eigen::Matrix<Real, 36, 6> jac;
  rhs_rotation(x, bond_b, bond_a, r, jac);
  Real cost = (r - target).squaredNorm();
  Real lambda = 1e-3;
  for (int it = 0; it < 300 && cost > 1e-28; ++it) {
    const Eigen::Matrix<Real, 36, 1> f = Eigen::Map<const Eigen::Matrix<Real, 36, 1>>(Matrix6r(r - target).data());
    const Matrix6r jtj = jac.transpose() * jac;
    const Params g = jac.transpose() * f;
    Matrix6r a = jtj;
    a.diagonal().array() += lambda * (jtj.diagonal().array() + 1e-12);
    const Params step = a.ldlt().solve(-g);
    const Params trial = x + step;
    Matrix6r r_trial;
    Eigen::Matrix<Real, 36, 6> jac_trial;
    rhs_rotation(trial, bond_b, bond_a, r_trial, jac_trial);
    const Real trial_cost = (r_trial - target).squaredNorm();
    if (trial_cost < cost) {
      x = trial;
      r = r_trial;
      jac = jac_trial;
      cost = trial_cost;
      lambda = std::max(lambda / 3, 1e-15);
    } else {
      lambda *= 4;
      if (lambda > 1e12) break;
    }
  }
  return cost < 1e-24;
}

}  // namespace

Matrix6r majorana_rotation(const Matchgate& g, int local_bond) {
  if (local_bond != 0 && local_bond != 1) throw ConfigError("majorana_rotation: local bond must be 0 or 1");
  return plane_rotation(g.alpha, g.beta, local_bond).r;
}

Matrix8c embed_three_qubit(const Matchgate& g, int local_bond) {
  const Matrix4c m = matchgate_unitary(g);
  Matrix8c u = Matrix8c::Zero();
  if (local_bond == 0) {
    u.block<4, 4>(0, 0) = m;
    u.block<4, 4>(4, 4) = m;
  } else if (local_bond == 1) {
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) u(2 * r, 2 * c) = u(2 * r + 1, 2 * c + 1) = m(r, c);
  } else {
    throw ConfigError("embed_three_qubit: local bond must be 0 or 1");
  }
  return u;
}

TurnoverResult turnover(const Matchgate& g1, const Matchgate& g2, const Matchgate& g3) {
  if (g1.qubit != g3.qubit || std::abs(g1.qubit - g2.qubit) != 1)
    throw ConfigError("turnover: expected bonds (a, a +- 1, a), got (" + std::to_string(g1.qubit) + ", " +
                      std::to_string(g2.qubit) + ", " + std::to_string(g3.qubit) + ")");
  const int low = std::min(g1.qubit, g2.qubit);
  const int la = g1.qubit - low;
  const int lb = g2.qubit - low;

  const Matrix8c lhs = embed_three_qubit(g3, la) * embed_three_qubit(g2, lb) * embed_three_qubit(g1, la);
  auto finish = [&](Params x, int seeds) {
    TurnoverResult out;
    out.g4 = {g2.qubit, wrap_angle(x(0)), wrap_angle(x(1))};
    out.g5 = {g1.qubit, wrap_angle(x(2)), wrap_angle(x(3))};
    out.g6 = {g2.qubit, wrap_angle(x(4)), wrap_angle(x(5))};
    auto local = [&](const Matchgate& g, int lbond) { return embed_three_qubit({0, g.alpha, g.beta}, lbond); };
    const Matrix8c rhs = local(out.g6, lb) * local(out.g5, la) * local(out.g4, lb);
    out.phase = std::arg((rhs.adjoint() * lhs).trace());
    out.residual = (lhs - std::exp(kI * out.phase) * rhs).norm();
    out.seeds_tried = seeds;
    return out;
  };

  if (is_identity(g2)) {
    const Matchgate f = fuse(g1, g3);
    return finish((Params() << 0, 0, f.alpha, f.beta, 0, 0).finished(), 0);
  }

  const Matrix6r target = plane_rotation(g1.alpha, g1.beta, la).r * plane_rotation(g2.alpha, g2.beta, lb).r *
                          plane_rotation(g3.alpha, g3.beta, la).r;
  const Matchgate f = fuse(g1, g3);
  std::vector<Params> seeds;
  seeds.push_back((Params() << g2.alpha, g2.beta, f.alpha, f.beta, 0.0, 0.0).finished());
  for (int s = 0; s < 8; ++s) {
    Params x;
    for (int k = 0; k < 6; ++k) x(k) = (((s >> (k % 3)) & 1) ? 1.0 : -1.0) * (kPi / 4 + 0.07 * k);
    seeds.push_back(x);
  }
  Real best_residual = std::numeric_limits<Real>::infinity();
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    Params x = seeds[s];
    if (!levenberg_marquardt(target, lb, la, x)) continue;
    TurnoverResult out = finish(x, static_cast<int>(s) + 1);
    if (out.residual < kTurnoverTolerance) return out;
    best_residual = std::min(best_residual, out.residual);
  }
  throw NumericalError("turnover: no seed converged (best 8x8 residual " + std::to_string(best_residual) + ")");
}

Real phase_adjusted_distance(const MatrixXc& a, const MatrixXc& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const Real phi = std::abs(overlap) > 0 ? std::arg(overlap) : 0.0;
  return (a - std::exp(kI * phi) * b).norm();
}

namespace {

struct Stats {
  std::int64_t turnovers = 0;
  Real max_residual = 0.0;

  void record(const TurnoverResult& r) {
    ++turnovers;
    max_residual = std::max(max_residual, r.residual);
  }
};

// Staircases B_0 ... B_{L-2} in time order; B_m holds bonds m, m-1, ..., 0.
class Triangle {
 public:
  Triangle(int qubits, Stats& stats) : qubits_(qubits), stats_(&stats) {
    for (int m = 0; m < qubits - 1; ++m) {
      stairs_.emplace_back();
      for (int b = m; b >= 0; --b) stairs_.back().push_back({b, 0.0, 0.0});
    }
  }

  void absorb(Matchgate g) {
    if (is_identity(g)) return;
    int b = g.qubit;
    for (int j = qubits_ - 2;; --j) {
      auto& stair = stairs_[static_cast<std::size_t>(j)];
      if (b == 0) {
        stair.back() = fuse(stair.back(), g);
        return;
      }
      const auto p = static_cast<std::size_t>(j - b);
      const TurnoverResult r = turnover(stair[p], stair[p + 1], g);
      stats_->record(r);
      stair[p] = r.g5;
      stair[p + 1] = r.g6;
      phase_ += r.phase;
      g = r.g4;
      --b;
    }
  }

  void absorb(const Triangle& other) {
    phase_ += other.phase_;
    for (const auto& g : other.word()) absorb(g);
  }

  void add_phase(Real p) { phase_ += p; }

  std::vector<Matchgate> word() const {
    std::vector<Matchgate> out;
    for (const auto& stair : stairs_) out.insert(out.end(), stair.begin(), stair.end());
    return out;
  }

  Real phase() const { return phase_; }

 private:
  int qubits_;
  Stats* stats_;
  std::vector<std::vector<Matchgate>> stairs_;
  Real phase_ = 0.0;
};

enum class MoveKind { commute, braid };

struct Move {
  MoveKind kind;
  std::size_t pos;
};

// Rewrites w[b..] so that it starts with s, given that s is a left descent
// of the element spelled by w[b..].
void bring_to_front(std::vector<int>& w, std::size_t b, int s, std::vector<Move>& moves) {
  const int t = w[b];
  if (t == s) return;
  bring_to_front(w, b + 1, s, moves);
  if (std::abs(t - s) >= 2) {
    std::swap(w[b], w[b + 1]);
    moves.push_back({MoveKind::commute, b});
    return;
  }
  bring_to_front(w, b + 2, t, moves);
  w[b] = s;
  w[b + 1] = t;
  w[b + 2] = s;
  moves.push_back({MoveKind::braid, b});
}

std::vector<int> triangle_word(int qubits) {
  std::vector<int> w;
  for (int m = 0; m < qubits - 1; ++m)
    for (int b = m; b >= 0; --b) w.push_back(b);
  return w;
}

std::vector<int> brick_word(int qubits) {
  std::vector<int> w;
  for (int layer = 0; layer < qubits; ++layer)
    for (int b = layer % 2; b < qubits - 1; b += 2) w.push_back(b);
  return w;
}

const std::vector<Move>& triangle_to_brick_moves(int qubits) {
  static std::mutex mutex;
  static std::map<int, std::vector<Move>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(qubits);
  if (it != cache.end()) return it->second;
  std::vector<int> w = triangle_word(qubits);
  const std::vector<int> target = brick_word(qubits);
  std::vector<Move> moves;
  for (std::size_t i = 0; i < target.size(); ++i) bring_to_front(w, i, target[i], moves);
  if (w != target) throw NumericalError("triangle_to_brick: braid search did not reach the brick word");
  return cache.emplace(qubits, std::move(moves)).first->second;
}

Circuit to_brick(const Triangle& tri, int qubits, Stats& stats) {
  std::vector<Matchgate> gates = tri.word();
  Real phase = tri.phase();
  for (const Move& m : triangle_to_brick_moves(qubits)) {
    if (m.kind == MoveKind::commute) {
      std::swap(gates[m.pos], gates[m.pos + 1]);
      continue;
    }
    const TurnoverResult r = turnover(gates[m.pos], gates[m.pos + 1], gates[m.pos + 2]);
    stats.record(r);
    gates[m.pos] = r.g4;
    gates[m.pos + 1] = r.g5;
    gates[m.pos + 2] = r.g6;
    phase += r.phase;
  }
  Circuit c;
  c.qubits = qubits;
  c.phase = wrap_angle(phase);
  c.gates.assign(gates.begin(), gates.end());
  return c;
}

void require_matchgates(const Circuit& c) {
  c.validate();
  if (c.qubits < 2) throw ConfigError("compress: need at least 2 qubits");
  for (std::size_t n = 0; n < c.gates.size(); ++n)
    if (!std::holds_alternative<Matchgate>(c.gates[n]))
      throw ConfigError("compress: gate " + std::to_string(n) + " is " + gate_name(c.gates[n]) +
                        ", only matchgates compress");
}

void require_brick(const Circuit& c) {
  const auto ls = layers(c);
  int previous = -1;
  for (std::size_t l = 0; l < ls.size(); ++l) {
    const int parity = gate_qubit(c.gates[ls[l].front()]) % 2;
    for (std::size_t n : ls[l])
      if (gate_qubit(c.gates[n]) % 2 != parity)
        throw ConfigError("compress: gate " + std::to_string(n) + " (match on qubit " +
                          std::to_string(gate_qubit(c.gates[n])) + ") mixes bond parities in layer " +
                          std::to_string(l));
    if (c.qubits > 2 && parity == previous)
      throw ConfigError("compress: gate " + std::to_string(ls[l].front()) + " (match on qubit " +
                        std::to_string(gate_qubit(c.gates[ls[l].front()])) + ") repeats the parity of layer " +
                        std::to_string(l - 1));
    previous = parity;
  }
}

Triangle triangle_of(const Circuit& c, Stats& stats) {
  Triangle tri(c.qubits, stats);
  tri.add_phase(c.phase);
  for (const auto& g : c.gates) tri.absorb(std::get<Matchgate>(g));
  return tri;
}

void fill_report(CompressReport* report, const Circuit& in, const Circuit& out, const Stats& stats, bool unchanged) {
  if (!report) return;
  report->input_depth = depth(in);
  report->input_gates = gate_count(in);
  report->depth = depth(out);
  report->gates = gate_count(out);
  report->cnots = cnot_count(out);
  report->turnovers = stats.turnovers;
  report->max_turnover_residual = stats.max_residual;
  report->unchanged = unchanged;
}

}  // namespace

Circuit compress(const Circuit& c, CompressReport* report) {
  require_matchgates(c);
  Stats stats;
  if (depth(c) <= c.qubits) {
    fill_report(report, c, c, stats, true);
    return c;
  }
  require_brick(c);
  const Triangle tri = triangle_of(c, stats);
  Circuit out = to_brick(tri, c.qubits, stats);
  fill_report(report, c, out, stats, false);
  return out;
}

Circuit compress_power(const Circuit& step, std::uint64_t reps, CompressReport* report) {
  require_matchgates(step);
  require_brick(step);
  Stats stats;
  Triangle result(step.qubits, stats);
  Triangle base = triangle_of(step, stats);
  while (reps > 0) {
    if (reps & 1) result.absorb(base);
    reps >>= 1;
    if (reps > 0) {
      const Triangle copy = base;
      base.absorb(copy);
    }
  }
  Circuit out = to_brick(result, step.qubits, stats);
  fill_report(report, step, out, stats, false);
  return out;
}

Circuit trotter_compressed(const HamiltonianSpec& spec, Real t, std::uint64_t nSteps, int order,
                           CompressReport* report) {
  if (nSteps == 0) {
    if (t != 0.0) throw ConfigError("trotter_compressed: nSteps = 0 requires t = 0");
    nSteps = 1;
  }
  return compress_power(trotter_circuit(spec, t / static_cast<Real>(nSteps), 1, order), nSteps, report);
}

MatrixXc circuit_unitary(const Circuit& c) {
  c.validate();
  if (c.qubits > kOracleCap)
    throw ConfigError("circuit_unitary: " + std::to_string(c.qubits) + " qubits exceeds " +
                      std::to_string(kOracleCap));
  const Eigen::Index dim = Eigen::Index{1} << c.qubits;
  MatrixXc u = MatrixXc::Identity(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    VectorXc v = u.col(col);
    for (const auto& g : c.gates) apply_gate(v, c.qubits, g);
    u.col(col) = v;
  }
  if (c.phase != 0.0) u *= std::exp(kI * c.phase);
  return u;
}

}  // namespace hcbq
