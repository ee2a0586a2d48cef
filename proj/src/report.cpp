// Copyright 2026 The stoqsym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stoqsym/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace stoqsym {

namespace {

using Json = nlohmann::ordered_json;

Json rational(const Rational& r) {
  return Json{{"exact", r.to_string()}, {"value", r.to_double()}};
}

Json component_document(const ComponentResult& result) {
  const EffectiveGraph& eg = result.graph;
  Json doc;
  doc["qubits"] = eg.n;
  doc["seed"] = format_bitmask(eg.seed, eg.n);
  Json reps = Json::array();
  for (Bitmask u : eg.reps) reps.push_back(format_bitmask(u, eg.n));
  doc["reps"] = reps;
  Json omega = Json::array();
  for (const auto& row : eg.omega) {
    Json r = Json::array();
    for (const Rational& x : row) r.push_back(rational(x));
    omega.push_back(r);
  }
  doc["omega"] = omega;
  Json boundary = Json::array();
  for (const Rational& x : eg.boundary) boundary.push_back(rational(x));
  doc["boundary"] = boundary;
  Json heff = Json::array();
  for (const auto& row : effective_hamiltonian(eg)) {
    Json r = Json::array();
    for (const Rational& x : row) r.push_back(rational(x));
    heff.push_back(r);
  }
  doc["effective_hamiltonian"] = heff;
  doc["class_sizes"] = eg.class_sizes;
  doc["component_size"] = eg.component_size;
  doc["energy"] = result.ground.energy;
  if (result.ground.excited_energy) {
    doc["gap"] = *result.ground.excited_energy - result.ground.energy;
  } else {
    doc["gap"] = nullptr;
  }
  Json amplitudes = Json::array();
  for (Eigen::Index i = 0; i < result.ground.amplitudes.size(); ++i) {
    amplitudes.push_back(result.ground.amplitudes(i));
  }
  doc["amplitudes"] = amplitudes;
  doc["probabilities"] = result.probabilities;
  doc["visited_count"] = eg.visited_count;
  doc["solver"] = Json{{"residual", result.ground.residual},
                       {"iterations", result.ground.iterations},
                       {"degenerate", result.ground.degenerate},
                       {"gap_converged", result.ground.excited_converged}};
  return doc;
}

}  // namespace

std::string effective_json(const ComponentResult& result, int indent) {
  return component_document(result).dump(indent) + "\n";
}

std::string sample_json(const SampleReport& report, int n, bool include_shots, int indent) {
  Json doc;
  doc["seed"] = report.seed;
  doc["shots_requested"] = report.shots.size();
  Json components = Json::array();
  for (const ComponentResult& c : report.components) components.push_back(component_document(c));
  doc["components"] = components;
  doc["approximate_members"] = report.approximate_members;
  Json shots = Json::array();
  if (include_shots) {
    for (const Shot& s : report.shots) {
      shots.push_back(Json{{"component", s.component},
                           {"class", format_bitmask(s.representative, n)},
                           {"bits", format_bitmask(s.member, n)}});
    }
  }
  doc["shots"] = shots;
  return doc.dump(indent) + "\n";
}

std::string sample_text(const SampleReport& report, int n) {
  std::ostringstream out;
  char buffer[64];
  for (std::size_t c = 0; c < report.components.size(); ++c) {
    const ComponentResult& comp = report.components[c];
    out << "# component " << c << " seed " << format_bitmask(comp.graph.seed, n)
        << " energy ";
    std::snprintf(buffer, sizeof buffer, "%.12g", comp.ground.energy);
    out << buffer << "\n";
    for (std::size_t r = 0; r < comp.graph.reps.size(); ++r) {
      std::snprintf(buffer, sizeof buffer, "%.12f", comp.probabilities[r]);
      out << "# " << format_bitmask(comp.graph.reps[r], n) << " size "
          << comp.graph.class_sizes[r] << " p " << buffer << "\n";
    }
  }
  if (report.approximate_members) out << "# members from approximate orbit walks\n";
  for (const Shot& s : report.shots) {
    out << format_bitmask(s.member, n) << "\n";
  }
  return out.str();
}

}  // namespace stoqsym
