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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcbq/circuit.hpp"
#include "hcbq/gaussian.hpp"
#include "hcbq/model.hpp"

namespace hcbq {

using Json = nlohmann::json;

/// {"sites": L, "w": w, "boundary": "open"|"periodic", "potential": {"V": V, "p": p} | null}
Json to_json(const HamiltonianSpec& spec);
HamiltonianSpec spec_from_json(const Json& j);

/// {"qubits": L, "phase": phi, "gates": [{"kind": "x", "q": [i]},
///  {"kind": "givens", "q": [i, i+1], "theta": t, "phi": f},
///  {"kind": "match", "q": [i, i+1], "alpha": a, "beta": b}]}
/// "phi" is optional on read and omitted on write when zero.
Json to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

Circuit read_circuit(const std::filesystem::path& path);
void write_circuit(const std::filesystem::path& path, const Circuit& c);
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

enum class Format { csv, json };
Format format_from_string(const std::string& s);
std::string extension(Format f);

/// Long-format data: one row per (quantity, i, j). `x` carries the plot
/// abscissa (physical momentum, site, or orbital index).
struct Row {
  std::string quantity;
  int i = 0;
  int j = 0;
  Real x = 0.0;
  Complex value;
};

class Frame {
 public:
  explicit Frame(Real time = 0.0) : time_(time) {}

  void add_scalar(const std::string& quantity, Real value);
  void add_vector(const std::string& quantity, const VectorXr& v);
  void add_matrix(const std::string& quantity, const MatrixXc& m);
  void add_distribution(const std::string& quantity, const MomentumDistribution& d);

  Real time() const { return time_; }
  const std::vector<Row>& rows() const { return rows_; }

  /// CSV header quantity,i,j,x,re,im. JSON groups rows per quantity in
  /// columnar arrays.
  std::string to_csv() const;
  Json to_json() const;
  void write(const std::filesystem::path& path, Format f) const;

 private:
  Real time_;
  std::vector<Row> rows_;
};

struct Series {
  std::string label;
  std::vector<Real> x;
  std::vector<Real> y;
};

/// Static line plot, one polyline per series.
void write_svg_plot(const std::filesystem::path& path, const std::string& title, const std::vector<Series>& series);

/// "t1.5" style file stem for a time value.
std::string time_stem(Real t);

}  // namespace hcbq
