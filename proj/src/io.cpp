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

#include "hcbq/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

namespace hcbq {

namespace fs = std::filesystem;

Json to_json(const HamiltonianSpec& spec) {
  Json j;
  j["sites"] = spec.sites;
  j["w"] = spec.hopping;
  j["boundary"] = to_string(spec.boundary);
  if (spec.potential)
    j["potential"] = {{"V", spec.potential->amplitude}, {"p", spec.potential->period}};
  else
    j["potential"] = nullptr;
  return j;
}

HamiltonianSpec spec_from_json(const Json& j) {
  try {
    HamiltonianSpec spec;
    spec.sites = j.at("sites").get<int>();
    spec.hopping = j.value("w", 1.0);
    spec.boundary = boundary_from_string(j.value("boundary", std::string("open")));
    if (j.contains("potential") && !j["potential"].is_null())
      spec.potential = Superlattice{j["potential"].at("V").get<Real>(), j["potential"].at("p").get<int>()};
    spec.validate();
    return spec;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("hamiltonian json: ") + e.what());
  }
}

Json to_json(const Circuit& c) {
  Json gates = Json::array();
  for (const auto& g : c.gates) {
    Json e;
    if (const auto* x = std::get_if<XGate>(&g)) {
      e = {{"kind", "x"}, {"q", {x->qubit}}};
    } else if (const auto* gv = std::get_if<GivensGate>(&g)) {
      e = {{"kind", "givens"}, {"q", {gv->qubit, gv->qubit + 1}}, {"theta", gv->theta}};
      if (gv->phi != 0.0) e["phi"] = gv->phi;
    } else if (const auto* m = std::get_if<Matchgate>(&g)) {
      e = {{"kind", "match"}, {"q", {m->qubit, m->qubit + 1}}, {"alpha", m->alpha}, {"beta", m->beta}};
    }
    gates.push_back(std::move(e));
  }
  return {{"qubits", c.qubits}, {"phase", c.phase}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const Json& j) {
  Circuit c;
  try {
    c.qubits = j.at("qubits").get<int>();
    c.phase = j.value("phase", 0.0);
    const Json& gates = j.at("gates");
    for (std::size_t n = 0; n < gates.size(); ++n) {
      const Json& e = gates[n];
      const std::string kind = e.at("kind").get<std::string>();
      const auto q = e.at("q").get<std::vector<int>>();
      const std::size_t width = kind == "x" ? 1 : 2;
      if (q.size() != width || (width == 2 && q[1] != q[0] + 1))
        throw ConfigError("circuit json: gate " + std::to_string(n) + " (" + kind +
                          ") needs qubits [i] or [i, i+1]");
      if (kind == "x")
        c.gates.emplace_back(XGate{q[0]});
      else if (kind == "givens")
        c.gates.emplace_back(GivensGate{q[0], e.at("theta").get<Real>(), e.value("phi", 0.0)});
      else if (kind == "match")
        c.gates.emplace_back(Matchgate{q[0], e.at("alpha").get<Real>(), e.at("beta").get<Real>()});
      else
        throw ConfigError("circuit json: gate " + std::to_string(n) + " has unknown kind '" + kind + "'");
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("circuit json: ") + e.what());
  }
  c.validate();
  return c;
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const Json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << std::setw(2) << j << '\n';
}

Circuit read_circuit(const fs::path& path) { return circuit_from_json(read_json(path)); }

void write_circuit(const fs::path& path, const Circuit& c) { write_json(path, to_json(c)); }

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ConfigError("unknown format '" + s + "' (expected csv or json)");
}

std::string extension(Format f) { return f == Format::csv ? "csv" : "json"; }

void Frame::add_scalar(const std::string& quantity, Real value) { rows_.push_back({quantity, 0, 0, 0.0, value}); }

void Frame::add_vector(const std::string& quantity, const VectorXr& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    rows_.push_back({quantity, static_cast<int>(i), 0, static_cast<Real>(i), v(i)});
}

void Frame::add_matrix(const std::string& quantity, const MatrixXc& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      rows_.push_back({quantity, static_cast<int>(i), static_cast<int>(j), static_cast<Real>(i), m(i, j)});
}

void Frame::add_distribution(const std::string& quantity, const MomentumDistribution& d) {
  for (std::size_t n = 0; n < d.modes.size(); ++n)
    rows_.push_back({quantity, d.modes[n], 0, d.physical_momentum(n), d.occupation(static_cast<Eigen::Index>(n))});
}

std::string Frame::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "quantity,i,j,x,re,im\n";
  for (const auto& r : rows_)
    out << r.quantity << ',' << r.i << ',' << r.j << ',' << r.x << ',' << r.value.real() << ',' << r.value.imag()
        << '\n';
  return out.str();
}

Json Frame::to_json() const {
  Json quantities = Json::object();
  for (const auto& r : rows_) {
    Json& q = quantities[r.quantity];
    if (q.is_null()) q = {{"i", Json::array()}, {"j", Json::array()}, {"x", Json::array()}, {"re", Json::array()},
                          {"im", Json::array()}};
    q["i"].push_back(r.i);
    q["j"].push_back(r.j);
    q["x"].push_back(r.x);
    q["re"].push_back(r.value.real());
    q["im"].push_back(r.value.imag());
  }
  return {{"time", time_}, {"quantities", std::move(quantities)}};
}

void Frame::write(const fs::path& path, Format f) const {
  if (f == Format::json) {
    write_json(path, to_json());
    return;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << to_csv();
}

std::string time_stem(Real t) {
  std::ostringstream s;
  s << 't' << std::setprecision(10) << t;
  return s.str();
}

void write_svg_plot(const fs::path& path, const std::string& title, const std::vector<Series>& series) {
  constexpr Real width = 640, height = 400, margin = 48;
  Real xmin = std::numeric_limits<Real>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (Real x : s.x) xmin = std::min(xmin, x), xmax = std::max(xmax, x);
    for (Real y : s.y) ymin = std::min(ymin, y), ymax = std::max(ymax, y);
  }
  if (!(xmax > xmin)) xmax = xmin + 1;
  if (!(ymax > ymin)) ymax = ymin + 1;
  auto px = [&](Real x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
  auto py = [&](Real y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << std::setprecision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin << "\" height=\""
      << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << margin << "\" y=\"" << height - margin / 2 << "\" font-size=\"10\">" << xmin << "</text>\n";
  out << "<text x=\"" << width - margin << "\" y=\"" << height - margin / 2
      << "\" text-anchor=\"end\" font-size=\"10\">" << xmax << "</text>\n";
  out << "<text x=\"4\" y=\"" << margin << "\" font-size=\"10\">" << ymax << "</text>\n";
  out << "<text x=\"4\" y=\"" << height - margin << "\" font-size=\"10\">" << ymin << "</text>\n";
  for (std::size_t n = 0; n < series.size(); ++n) {
    const auto& s = series[n];
    const char* color = colors[n % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) out << px(s.x[k]) << ',' << py(s.y[k]) << ' ';
    out << "\"/>\n";
    out << "<text x=\"" << width - margin - 4 << "\" y=\"" << margin + 14 * (n + 1)
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color << "\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace hcbq
