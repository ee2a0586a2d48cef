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

// stoqsym: command line front end.
//
// Exit codes: 0 success, 1 parse or validation failure, 2 power iteration
// did not converge, 3 inconsistent effective graph, 4 a size cap was hit.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stoqsym/ctg.hpp"
#include "stoqsym/effective.hpp"
#include "stoqsym/gi.hpp"
#include "stoqsym/hamiltonian.hpp"
#include "stoqsym/hypercube.hpp"
#include "stoqsym/oracle.hpp"
#include "stoqsym/report.hpp"
#include "stoqsym/rng.hpp"

namespace {

using namespace stoqsym;
using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kInput = 1, kConvergence = 2, kInconsistent = 3, kCap = 4 };

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string input;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  double tol = 1e-12;
  std::size_t max_iter = 1000000;
  int dense_cap = 10;
  std::size_t orbit_cap = std::size_t{1} << 16;
  int threads = 1;
  std::string format;
  std::string start;
  // command specific
  std::string assignment;
  std::string set;
  double delta = 1e-3;
  std::string perturbation;
  double check_tol = 1e-9;
  std::string first;
  std::string second;
  int vertices = 5;
  double edge_probability = 0.5;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Hamiltonian load(const std::string& path, bool require_terms) {
  Hamiltonian h = parse_hamiltonian(read_file(path));
  ValidationReport report = validate_stoquastic(h);
  if (!report.ok) {
    std::string message = "invalid Hamiltonian:";
    for (const Violation& v : report.violations) message += "\n  " + v.message;
    throw InputError(message);
  }
  if (require_terms && h.empty()) throw InputError("Hamiltonian has no terms");
  return h;
}

SolverOptions solver_options(const Config& cfg) {
  SolverOptions options;
  options.tol = cfg.tol;
  options.max_iter = cfg.max_iter;
  options.seed = cfg.seed;
  return options;
}

Bitmask start_state(const Config& cfg, int n) {
  if (!cfg.start.empty()) return parse_bitmask(cfg.start, n);
  Rng rng(cfg.seed);
  return rng.bits(n);
}

void require_format(const Config& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (cfg.format == f) return;
  }
  throw InputError("unsupported --format '" + cfg.format + "' for this command");
}

std::string number(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", x);
  return buffer;
}

int cmd_effective(const Config& cfg) {
  require_format(cfg, {"json", "text"});
  Hamiltonian h = load(cfg.input, true);
  RepresentativeFinder finder(h);
  Components components(h);
  ComponentResult result = solve_component(finder, components, start_state(cfg, h.n),
                                           solver_options(cfg), cfg.threads);
  if (cfg.format == "json") {
    std::cout << effective_json(result);
    return kOk;
  }
  const EffectiveGraph& eg = result.graph;
  std::cout << "energy " << number(result.ground.energy) << "\n";
  if (result.ground.excited_energy) {
    std::cout << "gap " << number(*result.ground.excited_energy - result.ground.energy) << "\n";
  }
  std::cout << "visited " << eg.visited_count << "\n";
  for (std::size_t i = 0; i < eg.reps.size(); ++i) {
    std::cout << format_bitmask(eg.reps[i], h.n) << " size " << eg.class_sizes[i] << " p "
              << number(result.probabilities[i]) << "\n";
  }
  return kOk;
}

int cmd_sample(const Config& cfg) {
  require_format(cfg, {"json", "text"});
  Hamiltonian h = load(cfg.input, true);
  SampleOptions options;
  options.shots = cfg.shots;
  options.seed = cfg.seed;
  options.orbit_cap = cfg.orbit_cap;
  options.threads = cfg.threads;
  options.solver = solver_options(cfg);
  SampleReport report = sample(h, options);
  if (cfg.format == "json") {
    std::cout << sample_json(report, h.n);
  } else {
    std::cout << sample_text(report, h.n);
  }
  return kOk;
}

int cmd_export_ctg(const Config& cfg) {
  require_format(cfg, {"dot", "json"});
  Hamiltonian h = load(cfg.input, false);
  ColoredDigraph g = build_shared(h);
  if (!cfg.assignment.empty()) g = attach_assignment(g, parse_bitmask(cfg.assignment, h.n));
  std::cout << (cfg.format == "dot" ? export_ctg_dot(g) : export_ctg_json(g));
  return kOk;
}

int cmd_export_gamma(const Config& cfg) {
  require_format(cfg, {"dot"});
  Hamiltonian h = load(cfg.input, false);
  std::cout << export_gamma_dot(h);
  return kOk;
}

int cmd_verify(const Config& cfg) {
  require_format(cfg, {"json"});
  Hamiltonian h = load(cfg.input, true);
  if (h.n > cfg.dense_cap) {
    throw oracle::CapExceeded("verify is limited to n <= " + std::to_string(cfg.dense_cap));
  }
  RepresentativeFinder finder(h);
  Components components(h);
  ComponentResult result = solve_component(finder, components, start_state(cfg, h.n),
                                           solver_options(cfg), cfg.threads);
  oracle::EffectiveDiagnostics d = oracle::verify_effective(h, result, finder, cfg.dense_cap);
  Json doc;
  doc["seed"] = format_bitmask(result.graph.seed, h.n);
  doc["classes"] = result.graph.reps.size();
  doc["component_vertices"] = d.component_vertices;
  doc["tolerance"] = cfg.check_tol;
  doc["checks"] = Json{
      {"energy_error", Json{{"value", d.energy_error}, {"pass", d.energy_error <= cfg.check_tol}}},
      {"total_variation",
       Json{{"value", d.total_variation}, {"pass", d.total_variation <= cfg.check_tol}}},
      {"amplitude_spread",
       Json{{"value", d.amplitude_spread}, {"pass", d.amplitude_spread <= cfg.check_tol}}},
      {"size_mismatches", Json{{"value", d.size_mismatches}, {"pass", d.size_mismatches == 0}}}};
  doc["pass"] = d.passed(cfg.check_tol);
  std::cout << doc.dump(2) << "\n";
  return kOk;
}

std::vector<bool> parse_set(const std::string& text, int n) {
  std::vector<bool> in_set(std::size_t{1} << n, false);
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    in_set[parse_bitmask(item, n)] = true;
  }
  return in_set;
}

int cmd_cheeger(const Config& cfg) {
  require_format(cfg, {"json"});
  Hamiltonian h = load(cfg.input, true);
  oracle::DenseOperator op = oracle::dense_hamiltonian(h, cfg.dense_cap);
  std::vector<bool> in_set = parse_set(cfg.set, h.n);
  oracle::ExactGround ground = oracle::exact_ground(op.matrix);
  double ratio = oracle::cheeger_ratio(op, ground.vector, in_set);
  Json doc;
  Json members = Json::array();
  for (std::size_t x = 0; x < in_set.size(); ++x) {
    if (in_set[x]) members.push_back(format_bitmask(x, h.n));
  }
  doc["set"] = members;
  doc["ground_energy"] = ground.energy;
  doc["gap"] = ground.gap;
  doc["cheeger_ratio"] = ratio;
  doc["bound"] = 2.0 * ratio;
  doc["tolerance"] = cfg.check_tol;
  doc["pass"] = ground.gap <= 2.0 * ratio + cfg.check_tol;
  std::cout << doc.dump(2) << "\n";
  return kOk;
}

int cmd_perturb(const Config& cfg) {
  require_format(cfg, {"json"});
  Hamiltonian h = load(cfg.input, true);
  if (h.n > cfg.dense_cap) {
    throw oracle::CapExceeded("perturb is limited to n <= " + std::to_string(cfg.dense_cap));
  }
  Hamiltonian delta;
  if (!cfg.perturbation.empty()) {
    delta = parse_hamiltonian(read_file(cfg.perturbation));
  } else {
    Rng rng(cfg.seed);
    delta = oracle::relative_perturbation(h, cfg.delta, rng);
  }
  oracle::PerturbationReport r = oracle::perturbation_bound(h, delta, cfg.dense_cap);
  Json doc;
  doc["perturbation"] = serialize_hamiltonian(delta);
  doc["gap"] = r.gap;
  doc["expectation"] = r.expectation;
  doc["delta_norm"] = r.delta_norm;
  doc["delta_frobenius"] = r.delta_frobenius;
  doc["h_frobenius"] = r.h_frobenius;
  doc["applicable"] = r.applicable;
  doc["tan2"] = r.tan2;
  doc["fidelity_bound"] = r.fidelity_bound;
  doc["exact_fidelity"] = r.exact_fidelity;
  doc["sin_angle"] = r.sin_angle;
  doc["projector_bound"] = r.projector_bound;
  doc["projector_bound_applicable"] = r.projector_bound_applicable;
  bool fidelity_pass = !r.applicable || r.exact_fidelity + cfg.check_tol >= r.fidelity_bound;
  bool projector_pass = !r.projector_bound_applicable ||
                        r.sin_angle <= r.projector_bound + cfg.check_tol;
  doc["tolerance"] = cfg.check_tol;
  doc["fidelity_pass"] = fidelity_pass;
  doc["projector_pass"] = projector_pass;
  doc["pass"] = fidelity_pass && projector_pass;
  std::cout << doc.dump(2) << "\n";
  return kOk;
}

// "V:a-b,c-d" with vertices 0..V-1.
oracle::SimpleGraph parse_graph(const std::string& text) {
  oracle::SimpleGraph g;
  auto colon = text.find(':');
  try {
    g.vertices = std::stoi(text.substr(0, colon));
    if (colon != std::string::npos) {
      std::stringstream stream(text.substr(colon + 1));
      std::string item;
      while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        auto dash = item.find('-');
        if (dash == std::string::npos) throw InputError("edge '" + item + "' lacks '-'");
        int a = std::stoi(item.substr(0, dash));
        int b = std::stoi(item.substr(dash + 1));
        if (a == b || a < 0 || b < 0 || a >= g.vertices || b >= g.vertices) {
          throw InputError("edge '" + item + "' is out of range");
        }
        g.edges.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
  } catch (const std::logic_error&) {
    throw InputError("cannot parse graph '" + text + "'");
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

Json graph_json(const oracle::SimpleGraph& g) {
  Json edges = Json::array();
  for (auto [a, b] : g.edges) edges.push_back(Json::array({a, b}));
  return Json{{"vertices", g.vertices}, {"edges", edges}};
}

int cmd_gi_reduce(const Config& cfg) {
  require_format(cfg, {"json"});
  oracle::SimpleGraph s;
  oracle::SimpleGraph t;
  if (cfg.first.empty() != cfg.second.empty()) {
    throw InputError("--first and --second must be given together");
  }
  if (!cfg.first.empty()) {
    s = parse_graph(cfg.first);
    t = parse_graph(cfg.second);
  } else {
    Rng rng(cfg.seed);
    s = oracle::random_graph(rng, cfg.vertices, cfg.edge_probability);
    t = oracle::random_graph(rng, cfg.vertices, cfg.edge_probability);
  }
  oracle::GiReduction red = oracle::gi_reduction(s, t);
  ColoredDigraph shared = build_shared(red.h);
  bool g_iso = gi::canonical_certificate(attach_assignment(shared, red.first)) ==
               gi::canonical_certificate(attach_assignment(shared, red.second));
  bool naive = oracle::naive_isomorphic(s, t);
  Json doc;
  doc["first"] = graph_json(s);
  doc["second"] = graph_json(t);
  doc["hamiltonian"] = serialize_hamiltonian(red.h);
  doc["first_assignment"] = format_bitmask(red.first, red.h.n);
  doc["second_assignment"] = format_bitmask(red.second, red.h.n);
  doc["assignments_equivalent"] = g_iso;
  doc["graphs_isomorphic"] = naive;
  doc["pass"] = g_iso == naive;
  std::cout << doc.dump(2) << "\n";
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Symmetry-reduced ground states of stoquastic Hamiltonians"};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&cfg](CLI::App* sub, bool input) {
    if (input) sub->add_option("input", cfg.input, "Hamiltonian file")->required();
    sub->add_option("--seed", cfg.seed, "Seed for every random choice");
    sub->add_option("--threads", cfg.threads, "Worker threads")
        ->envname("STOQSYM_THREADS")
        ->check(CLI::Range(1, 1024));
    sub->add_option("--format", cfg.format, "Output format (json, text, dot)");
  };
  auto solver = [&cfg](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "Power iteration tolerance");
    sub->add_option("--max-iter", cfg.max_iter, "Power iteration limit");
    sub->add_option("--start", cfg.start, "Starting basis state (default: drawn from --seed)");
  };
  auto dense = [&cfg](CLI::App* sub) {
    sub->add_option("--dense-cap", cfg.dense_cap, "Largest n for dense computations")
        ->check(CLI::Range(1, 16));
    sub->add_option("--check-tol", cfg.check_tol, "Tolerance of the pass verdicts");
  };

  struct Command {
    CLI::App* app;
    int (*fn)(const Config&);
    const char* format;
  };
  std::vector<Command> commands;

  auto* effective = app.add_subcommand("effective", "Effective graph and ground state");
  common(effective, true);
  solver(effective);
  commands.push_back({effective, cmd_effective, "json"});

  auto* sampler = app.add_subcommand("sample", "Ground-state measurement samples");
  common(sampler, true);
  solver(sampler);
  sampler->add_option("--shots", cfg.shots, "Number of samples");
  sampler->add_option("--orbit-cap", cfg.orbit_cap, "Largest orbit enumerated exactly");
  commands.push_back({sampler, cmd_sample, "text"});

  auto* ctg = app.add_subcommand("export-ctg", "Clausal theory graph");
  common(ctg, true);
  ctg->add_option("--assignment", cfg.assignment, "Attach the assignment of this state");
  commands.push_back({ctg, cmd_export_ctg, "dot"});

  auto* gamma = app.add_subcommand("export-gamma", "Weighted hypercube graph (n <= 5)");
  common(gamma, true);
  commands.push_back({gamma, cmd_export_gamma, "dot"});

  auto* verify = app.add_subcommand("verify", "Check the effective ground state densely");
  common(verify, true);
  solver(verify);
  dense(verify);
  commands.push_back({verify, cmd_verify, "json"});

  auto* cheeger = app.add_subcommand("cheeger", "Weighted Cheeger ratio of a state set");
  common(cheeger, true);
  dense(cheeger);
  cheeger->add_option("--set", cfg.set, "Comma separated basis states")->required();
  commands.push_back({cheeger, cmd_cheeger, "json"});

  auto* perturb = app.add_subcommand("perturb", "Ground-state fidelity under a perturbation");
  common(perturb, true);
  dense(perturb);
  perturb->add_option("--delta", cfg.delta, "Relative size of a random perturbation");
  perturb->add_option("--perturbation", cfg.perturbation, "Perturbation file (any real terms)");
  commands.push_back({perturb, cmd_perturb, "json"});

  auto* reduce = app.add_subcommand("gi-reduce", "Graph isomorphism through assignments");
  common(reduce, false);
  dense(reduce);
  reduce->add_option("--first", cfg.first, "Graph as V:a-b,c-d");
  reduce->add_option("--second", cfg.second, "Graph as V:a-b,c-d");
  reduce->add_option("--vertices", cfg.vertices, "Vertices of random graphs")
      ->check(CLI::Range(1, 9));
  reduce->add_option("--edge-prob", cfg.edge_probability, "Edge probability of random graphs")
      ->check(CLI::Range(0.0, 1.0));
  commands.push_back({reduce, cmd_gi_reduce, "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  for (const Command& c : commands) {
    if (!c.app->parsed()) continue;
    if (cfg.format.empty()) cfg.format = c.format;
    try {
      return c.fn(cfg);
    } catch (const NonConvergence& e) {
      std::cerr << "error: " << e.what() << " (residual " << e.residual() << " after "
                << e.iterations() << " iterations)\n";
      return kConvergence;
    } catch (const InconsistentEffectiveGraph& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInconsistent;
    } catch (const RationalOverflow& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInconsistent;
    } catch (const std::length_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kCap;
    } catch (const ParseError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInput;
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInput;
    } catch (const InputError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInput;
    }
  }
  return kInput;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return run(argc, argv);
}
