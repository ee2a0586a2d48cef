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

#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stoqsym/ctg.hpp"
#include "stoqsym/effective.hpp"
#include "stoqsym/gi.hpp"
#include "stoqsym/hamiltonian.hpp"
#include "stoqsym/hypercube.hpp"
#include "stoqsym/oracle.hpp"
#include "stoqsym/report.hpp"
#include "stoqsym/rng.hpp"

namespace py = pybind11;
using namespace stoqsym;

namespace {

Hamiltonian load(const std::string& text) {
  Hamiltonian h = parse_hamiltonian(text);
  ValidationReport report = validate_stoquastic(h);
  if (!report.ok) {
    std::string message = "invalid Hamiltonian:";
    for (const Violation& v : report.violations) message += "\n  " + v.message;
    throw py::value_error(message);
  }
  return h;
}

Bitmask start_state(const std::optional<std::string>& start, std::uint64_t seed, int n) {
  if (start) return parse_bitmask(*start, n);
  Rng rng(seed);
  return rng.bits(n);
}

SolverOptions solver(std::uint64_t seed, double tol, std::size_t max_iter) {
  SolverOptions options;
  options.seed = seed;
  options.tol = tol;
  options.max_iter = max_iter;
  return options;
}

ComponentResult solve(const Hamiltonian& h, RepresentativeFinder& finder, std::uint64_t seed,
                      const std::optional<std::string>& start, double tol,
                      std::size_t max_iter, int threads) {
  if (h.empty()) throw py::value_error("Hamiltonian has no terms");
  Components components(h);
  py::gil_scoped_release release;
  return solve_component(finder, components, start_state(start, seed, h.n),
                         solver(seed, tol, max_iter), threads);
}

}  // namespace

PYBIND11_MODULE(_stoqsym, m) {
  m.doc() = "Symmetry-reduced ground states of stoquastic Pauli Hamiltonians.";

  py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);
  py::register_exception<InconsistentEffectiveGraph>(m, "InconsistentEffectiveGraph",
                                                     PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("normalize", [](const std::string& text) { return serialize_hamiltonian(load(text)); },
        py::arg("text"), "Parse, validate and return the canonical text form.");

  m.def(
      "violations",
      [](const std::string& text) {
        py::list out;
        for (const Violation& v : validate_stoquastic(parse_hamiltonian(text)).violations) {
          out.append(py::make_tuple(v.rule, v.message));
        }
        return out;
      },
      py::arg("text"), "(rule, message) pairs for every violated constraint.");

  m.def(
      "effective_json",
      [](const std::string& text, std::uint64_t seed, std::optional<std::string> start,
         double tol, std::size_t max_iter, int threads) {
        Hamiltonian h = load(text);
        RepresentativeFinder finder(h);
        return effective_json(solve(h, finder, seed, start, tol, max_iter, threads));
      },
      py::arg("text"), py::arg("seed") = 0, py::arg("start") = py::none(),
      py::arg("tol") = 1e-12, py::arg("max_iter") = 1000000, py::arg("threads") = 1);

  m.def(
      "sample_json",
      [](const std::string& text, std::uint64_t shots, std::uint64_t seed,
         std::size_t orbit_cap, int threads, bool include_shots) {
        Hamiltonian h = load(text);
        if (h.empty()) throw py::value_error("Hamiltonian has no terms");
        SampleOptions options;
        options.shots = shots;
        options.seed = seed;
        options.orbit_cap = orbit_cap;
        options.threads = threads;
        options.solver.seed = seed;
        SampleReport report;
        {
          py::gil_scoped_release release;
          report = sample(h, options);
        }
        return sample_json(report, h.n, include_shots);
      },
      py::arg("text"), py::arg("shots"), py::arg("seed") = 0,
      py::arg("orbit_cap") = std::size_t{1} << 16, py::arg("threads") = 1,
      py::arg("include_shots") = true);

  m.def(
      "verify",
      [](const std::string& text, std::uint64_t seed, std::optional<std::string> start,
         int cap, double tol) {
        Hamiltonian h = load(text);
        RepresentativeFinder finder(h);
        ComponentResult result = solve(h, finder, seed, start, 1e-12, 1000000, 1);
        oracle::EffectiveDiagnostics d = oracle::verify_effective(h, result, finder, cap);
        py::dict out;
        out["energy_error"] = d.energy_error;
        out["total_variation"] = d.total_variation;
        out["amplitude_spread"] = d.amplitude_spread;
        out["size_mismatches"] = d.size_mismatches;
        out["component_vertices"] = d.component_vertices;
        out["pass"] = d.passed(tol);
        return out;
      },
      py::arg("text"), py::arg("seed") = 0, py::arg("start") = py::none(),
      py::arg("cap") = 10, py::arg("tol") = 1e-9);

  m.def(
      "equivalent",
      [](const std::string& text, const std::string& u, const std::string& v) {
        Hamiltonian h = load(text);
        ColoredDigraph shared = build_shared(h);
        return gi::canonical_certificate(attach_assignment(shared, parse_bitmask(u, h.n))) ==
               gi::canonical_certificate(attach_assignment(shared, parse_bitmask(v, h.n)));
      },
      py::arg("text"), py::arg("u"), py::arg("v"),
      "True when the two basis states have isomorphic assignment graphs.");

  m.def(
      "export_ctg",
      [](const std::string& text, std::optional<std::string> assignment,
         const std::string& format) {
        Hamiltonian h = load(text);
        ColoredDigraph g = build_shared(h);
        if (assignment) g = attach_assignment(g, parse_bitmask(*assignment, h.n));
        if (format == "dot") return export_ctg_dot(g);
        if (format == "json") return export_ctg_json(g);
        throw py::value_error("format must be 'dot' or 'json'");
      },
      py::arg("text"), py::arg("assignment") = py::none(), py::arg("format") = "dot");

  m.def("export_gamma", [](const std::string& text) { return export_gamma_dot(load(text)); },
        py::arg("text"));

#ifdef STOQSYM_VERSION
  m.attr("__version__") = STOQSYM_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
