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

// Command-line driver: quench experiments, circuit compression, state
// preparation and statevector simulation.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hcbq/compiler.hpp"
#include "hcbq/ensembles.hpp"
#include "hcbq/gaussian.hpp"
#include "hcbq/io.hpp"
#include "hcbq/linalg.hpp"
#include "hcbq/simulator.hpp"
#include "hcbq/stateprep.hpp"

#ifndef HCBQ_VERSION
#define HCBQ_VERSION "unknown"
#endif

using namespace hcbq;
namespace fs = std::filesystem;

namespace {

struct Options {
  int sites = 32;
  int particles = -1;  // negative: experiment default
  int period = 4;
  Real potential = 100.0;
  std::string boundary;
  std::vector<int> occupied;
  std::vector<Real> times;
  std::uint64_t steps = 0;
  Real dt = 1e-3;
  int order = 2;
  std::string backend = "gaussian";
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  int jobs = 0;
  std::vector<Real> window = {25.0, 35.0};
  int window_samples = 101;
  bool svg = false;
  std::string out = "out";
  std::string format = "csv";
  std::string config;
  std::string in;
  std::string state = "superlattice";
  Real tol = kDefaultNullingTolerance;
  bool report = false;
};

Json versions() {
  return {{"hcbq", HCBQ_VERSION},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"cli11", CLI11_VERSION},
          {"compiler", __VERSION__}};
}

Json tolerances(const Options& o) {
  return {{"nulling", o.tol}, {"turnover", kTurnoverTolerance}};
}

// Values from --config fill options that were not given on the command line.
void apply_config(CLI::App* sub, const std::string& path) {
  const Json cfg = read_json(path);
  if (!cfg.is_object()) throw ConfigError(path + ": expected a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config") continue;
    CLI::Option* opt = nullptr;
    try {
      opt = sub->get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw ConfigError(path + ": unknown key '" + key + "' for " + sub->get_name());
    }
    if (opt->count() > 0) continue;
    auto text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (value.is_array()) {
      std::vector<std::string> items;
      for (const auto& v : value) items.push_back(text(v));
      opt->add_result(items);
    } else {
      opt->add_result(text(value));
    }
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError(path + ": key '" + key + "': " + e.what());
    }
  }
}

std::uint64_t steps_for(const Options& o, Real t) {
  if (o.steps > 0) return o.steps;
  if (t == 0.0) return 0;
  return static_cast<std::uint64_t>(std::ceil(t / o.dt - 1e-9));
}

bool uses_statevector(const Options& o) { return o.backend != "gaussian"; }

void check_common(const Options& o) {
  if (o.sites < 2) throw ConfigError("--sites must be at least 2");
  for (Real t : o.times)
    if (!(t >= 0.0)) throw ConfigError("--times must be non-negative");
  if (!(o.dt > 0.0)) throw ConfigError("--dt must be positive");
  if (uses_statevector(o) && o.sites > kStatevectorCap)
    throw ConfigError("backend " + o.backend + " needs --sites <= " + std::to_string(kStatevectorCap));
}

struct Observed {
  DensityMatrix rho;
  NaturalOrbitals no;
};

Observed add_observables(Frame& f, const std::string& prefix, const DensityMatrix& rho,
                         const CorrelationMatrix& lambda) {
  f.add_distribution(prefix + "boson_nk", momentum_distribution(rho));
  f.add_distribution(prefix + "fermion_nk", momentum_distribution(lambda));
  f.add_vector(prefix + "density", site_densities(rho.rho));
  NaturalOrbitals no = natural_orbitals(rho);
  f.add_vector(prefix + "no_occupations", no.occupations);
  f.add_matrix(prefix + "leading_orbitals", no.orbitals.leftCols(std::min<Eigen::Index>(2, no.orbitals.cols())));
  return {rho, std::move(no)};
}

struct TimePoint {
  Frame frame;
  Json diagnostics = Json::object();
  VectorXr boson_nk;
};

// Everything a quench needs to produce one time point.
struct Quench {
  HamiltonianSpec evolution;
  SlaterState initial;
  Eigensystem eig;
  Statevector initial_sv;  // only filled for statevector backends
};

TimePoint observe(const Options& o, const Quench& q, Real t, std::size_t index) {
  TimePoint tp;
  tp.frame = Frame(t);
  const bool gauss = o.backend != "statevector";
  Observed g;
  if (gauss) {
    const SlaterState st = evolve(q.initial, q.eig, t);
    g = add_observables(tp.frame, "", hcb_density_matrix(st), fermion_correlations(st));
    tp.boson_nk = momentum_distribution(g.rho).occupation;
  }
  if (!uses_statevector(o)) return tp;

  const std::uint64_t n = steps_for(o, t);
  CompressReport report;
  const Circuit c = trotter_compressed(q.evolution, t, n, o.order, &report);
  const Statevector psi = apply_circuit(q.initial_sv, c);
  std::mt19937_64 rng(o.seed + index);
  const DensityMatrix rho = o.shots > 0 ? measure_density_matrix_sampled(psi, o.shots, rng) : measure_density_matrix(psi);
  const Observed s = add_observables(tp.frame, gauss ? "sv_" : "", rho, measure_fermion_correlations(psi));
  if (!gauss) tp.boson_nk = momentum_distribution(rho).occupation;
  tp.diagnostics = {{"steps", n},           {"order", o.order},
                    {"gates", report.gates}, {"depth", report.depth},
                    {"turnovers", report.turnovers}, {"max_turnover_residual", report.max_turnover_residual}};

  if (gauss) {
    const Real deviation = (g.rho.rho - rho.rho).cwiseAbs().maxCoeff();
    tp.frame.add_scalar("max_deviation", deviation);
    tp.diagnostics["max_deviation"] = deviation;
    if (s.no.orbitals.cols() >= 2) {
      const LnoMatch m = lno_match(s.no.orbitals.col(0), s.no.orbitals.col(1), g.no.orbitals.col(0));
      tp.frame.add_matrix("lno_match", m.orbital);
      tp.frame.add_scalar("lno_match_residual", m.residual);
      tp.diagnostics["lno_match_residual"] = m.residual;
      tp.diagnostics["lno_match_degenerate"] = m.degenerate;
    }
  }
  return tp;
}

// Time points in parallel, at most `jobs` at once; results in input order.
std::vector<TimePoint> observe_all(const Options& o, const Quench& q) {
  int jobs = o.jobs > 0 ? o.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (uses_statevector(o) && o.sites > 20) jobs = 1;  // 2^L amplitudes each
  std::vector<TimePoint> out;
  for (std::size_t start = 0; start < o.times.size(); start += static_cast<std::size_t>(jobs)) {
    std::vector<std::future<TimePoint>> batch;
    for (std::size_t n = start; n < std::min(o.times.size(), start + static_cast<std::size_t>(jobs)); ++n)
      batch.push_back(std::async(std::launch::async, observe, std::cref(o), std::cref(q), o.times[n], n));
    for (auto& f : batch) out.push_back(f.get());
  }
  return out;
}

class Manifest {
 public:
  Manifest(const Options& o, std::string command, Json config) : o_(o) {
    doc_ = {{"command", std::move(command)},
            {"config", std::move(config)},
            {"versions", versions()},
            {"seeds", {{"sampling", o.seed}}},
            {"tolerances", tolerances(o)},
            {"files", Json::array()}};
  }

  void write(const Frame& f, const std::string& stem, const Json& diagnostics = Json::object()) {
    const std::string name = stem + "." + extension(format_from_string(o_.format));
    f.write(fs::path(o_.out) / name, format_from_string(o_.format));
    Json entry = {{"file", name}, {"time", f.time()}};
    if (!diagnostics.empty()) entry["diagnostics"] = diagnostics;
    doc_["files"].push_back(std::move(entry));
  }

  Json& doc() { return doc_; }
  void finish() { write_json(fs::path(o_.out) / "manifest.json", doc_); }

 private:
  const Options& o_;
  Json doc_;
};

Json quench_config(const Options& o, const HamiltonianSpec& spec, int particles) {
  return {{"sites", o.sites},   {"particles", particles}, {"hamiltonian", to_json(spec)},
          {"times", o.times},   {"steps", o.steps},       {"dt", o.dt},
          {"order", o.order},   {"backend", o.backend},   {"shots", o.shots},
          {"format", o.format}, {"occupied", o.occupied}};
}

Series momentum_series(const std::string& label, const MomentumDistribution& d, const VectorXr& values) {
  Series s{label, {}, {}};
  for (std::size_t n = 0; n < d.modes.size(); ++n) {
    s.x.push_back(d.physical_momentum(n));
    s.y.push_back(values(static_cast<Eigen::Index>(n)));
  }
  return s;
}

int run_quench_fock(Options o) {
  if (o.times.empty()) o.times = {0.0, 1.5, 3.0, 6.0, 30.0};
  check_common(o);
  const int N = o.particles < 0 ? std::min(10, o.sites) : o.particles;
  if (N > o.sites) throw ConfigError("--particles exceeds --sites");
  if (o.occupied.empty())
    for (int i = 0; i < N; ++i) o.occupied.push_back((o.sites - N) / 2 + i);
  if (static_cast<int>(o.occupied.size()) != N) throw ConfigError("--occupied must list --particles sites");

  const HamiltonianSpec spec{o.sites, 1.0, boundary_from_string(o.boundary.empty() ? "open" : o.boundary),
                             std::nullopt};
  spec.validate();
  Quench q{spec, fock_state(o.sites, o.occupied), eigh(build_hopping_matrix(spec)), {}};
  if (uses_statevector(o)) q.initial_sv = init_bitstring(o.sites, o.occupied);

  Manifest m(o, "quench-fock", quench_config(o, spec, N));
  const std::vector<TimePoint> points = observe_all(o, q);
  std::vector<Series> plot;
  for (const auto& tp : points) {
    m.write(tp.frame, time_stem(tp.frame.time()), tp.diagnostics);
    const MomentumDistribution shape = momentum_distribution(MatrixXc::Zero(o.sites, o.sites));
    plot.push_back(momentum_series(time_stem(tp.frame.time()), shape, tp.boson_nk));
  }
  if (o.svg) write_svg_plot(fs::path(o.out) / "boson_nk.svg", "boson momentum distribution", plot);
  m.finish();
  return 0;
}

int run_quench_superlattice(Options o) {
  if (o.times.empty()) o.times = {0.0, 30.0};
  check_common(o);
  if (o.period < 1 || o.sites % o.period != 0) throw ConfigError("--period must divide --sites");
  const int N = o.particles < 0 ? o.sites / (2 * o.period) + 1 : o.particles;
  if (N < 1 || N > o.sites) throw ConfigError("--particles out of range");
  if (o.window.size() != 2 || !(o.window[0] >= 0.0) || o.window[1] < o.window[0])
    throw ConfigError("--window needs two times a <= b");
  if (o.window_samples < 1) throw ConfigError("--window-samples must be positive");
  const Boundary bc = boundary_from_string(o.boundary.empty() ? "periodic" : o.boundary);
  if (uses_statevector(o) && bc != Boundary::open)
    throw ConfigError("statevector backends need --boundary open (no periodic product formula)");

  const HamiltonianSpec prequench{o.sites, 1.0, bc, Superlattice{o.potential, o.period}};
  prequench.validate();
  const HamiltonianSpec spec = prequench.without_potential();
  const HoppingMatrix h = build_hopping_matrix(spec);
  Quench q{spec, ground_state(build_hopping_matrix(prequench), N), eigh(h), {}};
  Json prep = Json::object();
  if (uses_statevector(o)) {
    const PrepPlan plan = givens_sequence(fermion_correlations(q.initial), o.tol);
    const Circuit c = plan_to_circuit(plan);
    q.initial_sv = apply_circuit(init_bitstring(o.sites, {}), c);
    prep = {{"rotations", plan.rotations.size()}, {"gates", c.gates.size()}, {"residual", plan.residual}};
  }

  Json config = quench_config(o, spec, N);
  config["prequench"] = to_json(prequench);
  config["window"] = o.window;
  config["window_samples"] = o.window_samples;
  Manifest m(o, "quench-superlattice", std::move(config));
  if (!prep.empty()) m.doc()["preparation"] = prep;

  Frame initial(0.0);
  add_observables(initial, "", hcb_density_matrix(q.initial), fermion_correlations(q.initial));
  m.write(initial, "initial");

  const std::vector<TimePoint> points = observe_all(o, q);
  for (const auto& tp : points) m.write(tp.frame, time_stem(tp.frame.time()), tp.diagnostics);

  // window average from the exact (gaussian) dynamics
  VectorXr average = VectorXr::Zero(o.sites);
  for (int n = 0; n < o.window_samples; ++n) {
    const Real t = o.window_samples == 1
                       ? o.window[0]
                       : o.window[0] + (o.window[1] - o.window[0]) * n / static_cast<Real>(o.window_samples - 1);
    average += momentum_distribution(hcb_density_matrix(evolve(q.initial, q.eig, t))).occupation;
  }
  average /= o.window_samples;

  const GGESpec gge = gge_from_initial(q.initial, spec);
  const GESpec ge = ge_fit(q.initial, h);
  const MomentumDistribution gge_nk = ensemble_momentum_distribution(gge);
  const MomentumDistribution ge_nk = ensemble_momentum_distribution(ge);
  const std::size_t last =
      static_cast<std::size_t>(std::max_element(o.times.begin(), o.times.end()) - o.times.begin());
  const VectorXr& late = points[last].boson_nk;

  Frame ens(o.times[last]);
  ens.add_distribution("gge_nk", gge_nk);
  ens.add_distribution("ge_nk", ge_nk);
  MomentumDistribution avg = gge_nk;
  avg.occupation = average;
  ens.add_distribution("window_average_nk", avg);
  ens.add_scalar("ge_beta", ge.beta);
  ens.add_scalar("ge_mu", ge.mu);
  Json distances = Json::object();
  auto distance = [&](const std::string& name, const VectorXr& a, const VectorXr& b) {
    const Real linf = (a - b).cwiseAbs().maxCoeff(), l2 = (a - b).norm();
    ens.add_scalar("linf_" + name, linf);
    ens.add_scalar("l2_" + name, l2);
    distances[name] = {{"linf", linf}, {"l2", l2}};
  };
  distance("late_gge", late, gge_nk.occupation);
  distance("late_ge", late, ge_nk.occupation);
  distance("window_gge", average, gge_nk.occupation);
  distance("window_ge", average, ge_nk.occupation);
  distance("gge_ge", gge_nk.occupation, ge_nk.occupation);
  m.write(ens, "ensembles", {{"distances", distances}, {"ge_iterations", ge.iterations}, {"ge_residual", ge.residual}});

  if (o.svg)
    write_svg_plot(fs::path(o.out) / "ensembles.svg", "late-time boson momentum distribution",
                   {momentum_series(time_stem(o.times[last]), gge_nk, late),
                    momentum_series("window average", gge_nk, average),
                    momentum_series("GGE", gge_nk, gge_nk.occupation),
                    momentum_series("GE", gge_nk, ge_nk.occupation)});
  m.finish();
  return 0;
}

Json compress_json(const CompressReport& r) {
  return {{"input_depth", r.input_depth}, {"input_gates", r.input_gates}, {"depth", r.depth},
          {"gates", r.gates},             {"cnots", r.cnots},             {"turnovers", r.turnovers},
          {"max_turnover_residual", r.max_turnover_residual},             {"unchanged", r.unchanged}};
}

int run_compress(const Options& o) {
  CompressReport report;
  const Circuit out = compress(read_circuit(o.in), &report);
  write_circuit(o.out, out);
  if (o.report) std::cout << std::setw(2) << compress_json(report) << '\n';
  return 0;
}

int run_prepare(const Options& o) {
  if (o.sites < 2) throw ConfigError("--sites must be at least 2");
  const Boundary bc = boundary_from_string(o.boundary.empty() ? "open" : o.boundary);
  SlaterState s;
  int N = 0;
  if (o.state == "fock") {
    s = fock_state(o.sites, o.occupied);
    N = static_cast<int>(o.occupied.size());
  } else {
    HamiltonianSpec spec{o.sites, 1.0, bc, std::nullopt};
    if (o.state == "superlattice") spec.potential = Superlattice{o.potential, o.period};
    spec.validate();
    N = o.particles < 0 ? (o.state == "superlattice" ? o.sites / (2 * o.period) + 1 : o.sites / 2) : o.particles;
    if (N < 0 || N > o.sites) throw ConfigError("--particles out of range");
    s = ground_state(build_hopping_matrix(spec), N);
  }
  const PrepPlan plan = givens_sequence(fermion_correlations(s), o.tol);
  const Circuit c = plan_to_circuit(plan);
  write_circuit(o.out, c);
  if (o.report) {
    int x = 0;
    for (const auto& g : c.gates) x += std::holds_alternative<XGate>(g);
    const Json r = {{"state", o.state},
                    {"sites", o.sites},
                    {"particles", N},
                    {"x_gates", x},
                    {"rotations", plan.rotations.size()},
                    {"rotation_bound", N * (o.sites - N)},
                    {"depth", depth(c)},
                    {"residual", plan.residual}};
    std::cout << std::setw(2) << r << '\n';
  }
  return 0;
}

int run_simulate(const Options& o) {
  const Circuit c = read_circuit(o.in);
  if (c.qubits > kStatevectorCap) throw ConfigError("circuit has more than " + std::to_string(kStatevectorCap) + " qubits");
  const Statevector psi = apply_circuit(init_bitstring(c.qubits, o.occupied), c);
  std::mt19937_64 rng(o.seed);
  const DensityMatrix rho = o.shots > 0 ? measure_density_matrix_sampled(psi, o.shots, rng) : measure_density_matrix(psi);
  Frame f(0.0);
  add_observables(f, "", rho, measure_fermion_correlations(psi));
  f.add_matrix("rho", rho.rho);
  f.add_scalar("particle_number", particle_number(psi));
  f.add_scalar("measurement_groups", measurement_group_count(c.qubits));
  Manifest m(o, "simulate",
             {{"in", o.in}, {"occupied", o.occupied}, {"shots", o.shots}, {"format", o.format}, {"qubits", c.qubits}});
  m.write(f, "result");
  m.finish();
  return 0;
}

void quench_options(CLI::App* sub, Options& o) {
  sub->add_option("--sites", o.sites, "lattice sites L")->capture_default_str();
  sub->add_option("--particles", o.particles, "particle number N (default depends on experiment)");
  sub->add_option("--boundary", o.boundary, "open or periodic")->check(CLI::IsMember({"open", "periodic"}));
  sub->add_option("--times", o.times, "evaluation times in units of hbar/w");
  sub->add_option("--steps", o.steps, "Trotter steps per time point (default ceil(t/dt))");
  sub->add_option("--dt", o.dt, "Trotter step when --steps is absent")->capture_default_str();
  sub->add_option("--order", o.order, "product formula order")->check(CLI::IsMember({1, 2}))->capture_default_str();
  sub->add_option("--backend", o.backend, "gaussian, statevector or both")
      ->check(CLI::IsMember({"gaussian", "statevector", "both"}))
      ->capture_default_str();
  sub->add_option("--shots", o.shots, "shots per correlator (0: exact expectation values)")->capture_default_str();
  sub->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
  sub->add_option("--jobs", o.jobs, "concurrent time points (0: hardware threads)");
  sub->add_flag("--svg", o.svg, "also write an SVG plot");
}

void output_options(CLI::App* sub, Options& o, const std::string& out_help) {
  sub->add_option("--out", o.out, out_help)->capture_default_str();
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--config", o.config, "JSON file of option values; command-line flags take precedence");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hard-core boson quench dynamics: gaussian engine, matchgate circuits, statevector simulation"};
  app.set_version_flag("--version", HCBQ_VERSION);
  app.require_subcommand(1);
  Options o;

  auto* fock = app.add_subcommand("quench-fock", "free expansion of a block of bosons");
  quench_options(fock, o);
  fock->add_option("--occupied", o.occupied, "initially occupied sites (default: central block)");
  output_options(fock, o, "output directory");

  auto* super = app.add_subcommand("quench-superlattice", "superlattice ground state quenched to the bare chain");
  quench_options(super, o);
  super->add_option("--period", o.period, "superlattice period p")->capture_default_str();
  super->add_option("--potential", o.potential, "superlattice amplitude V")->capture_default_str();
  super->add_option("--window", o.window, "time-average window a b")->expected(2)->capture_default_str();
  super->add_option("--window-samples", o.window_samples, "samples in the window")->capture_default_str();
  output_options(super, o, "output directory");

  auto* comp = app.add_subcommand("compress", "compress a brick matchgate circuit");
  comp->add_option("--in", o.in, "input circuit JSON")->required();
  comp->add_option("--out", o.out, "output circuit JSON")->required();
  comp->add_flag("--report", o.report, "print diagnostics as JSON");
  comp->add_option("--config", o.config, "JSON file of option values");

  auto* prep = app.add_subcommand("prepare", "state preparation circuit for a Slater determinant");
  prep->add_option("--state", o.state, "fock, ground or superlattice")
      ->check(CLI::IsMember({"fock", "ground", "superlattice"}))
      ->capture_default_str();
  prep->add_option("--sites", o.sites, "lattice sites L")->capture_default_str();
  prep->add_option("--particles", o.particles, "particle number N");
  prep->add_option("--occupied", o.occupied, "occupied sites for --state fock");
  prep->add_option("--period", o.period, "superlattice period p")->capture_default_str();
  prep->add_option("--potential", o.potential, "superlattice amplitude V")->capture_default_str();
  prep->add_option("--boundary", o.boundary, "open or periodic")->check(CLI::IsMember({"open", "periodic"}));
  prep->add_option("--tol", o.tol, "nulling tolerance")->capture_default_str();
  prep->add_option("--out", o.out, "output circuit JSON")->required();
  prep->add_flag("--report", o.report, "print diagnostics as JSON");
  prep->add_option("--config", o.config, "JSON file of option values");

  auto* sim = app.add_subcommand("simulate", "run a circuit on the statevector simulator");
  sim->add_option("--in", o.in, "circuit JSON")->required();
  sim->add_option("--occupied", o.occupied, "initially occupied qubits (default: vacuum)");
  sim->add_option("--shots", o.shots, "shots per correlator (0: exact)")->capture_default_str();
  sim->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
  output_options(sim, o, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!o.config.empty()) apply_config(sub, o.config);
    if (sub == fock) return run_quench_fock(o);
    if (sub == super) return run_quench_superlattice(o);
    if (sub == comp) return run_compress(o);
    if (sub == prep) return run_prepare(o);
    return run_simulate(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
