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

// Symmetry-reduced ground state pipeline: representatives of the basis-state
// equivalence classes reachable from a seed, the quotient weight matrix, class
// sizes, the effective Hamiltonian, its Perron vector, and sampling.

#ifndef STOQSYM_EFFECTIVE_HPP
#define STOQSYM_EFFECTIVE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "stoqsym/ctg.hpp"
#include "stoqsym/gi.hpp"
#include "stoqsym/hamiltonian.hpp"
#include "stoqsym/hypercube.hpp"
#include "stoqsym/rng.hpp"

namespace stoqsym {

/// Class sizes could not be made integral, or detailed balance failed.
class InconsistentEffectiveGraph : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Power iteration did not reach the requested residual.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& message, double residual,
                 std::size_t iterations)
      : std::runtime_error(message), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  std::size_t iterations() const { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

/// Literal-level action of one automorphism of the shared graph:
/// image[l] is the literal that literal l maps to (literal indices as in
/// ColoredDigraph::literal_index).
using LiteralPermutation = std::vector<int>;

/// FindRepresentative backed by canonical certificates. Each basis state is
/// canonicalized at most once; a certificate seen before resolves to its
/// representative without further isomorphism tests.
class RepresentativeFinder {
 public:
  explicit RepresentativeFinder(const Hamiltonian& h);

  const Hamiltonian& hamiltonian() const { return *h_; }
  const ColoredDigraph& shared() const { return shared_; }

  /// Certificate of the graph with the assignment star of u attached. Pure;
  /// safe to call concurrently.
  gi::Certificate certificate(Bitmask u) const;

  /// Index of u's representative in reps(), if one has been added.
  std::optional<std::size_t> lookup(Bitmask u);
  /// Same, with a certificate computed by the caller.
  std::optional<std::size_t> lookup(Bitmask u, const gi::Certificate& cert);
  /// Registers u as the representative of its class; returns its index.
  std::size_t add(Bitmask u);

  bool known(Bitmask u) const;
  const std::vector<Bitmask>& reps() const { return reps_; }
  /// Number of distinct basis states canonicalized so far.
  std::size_t queried() const { return memo_.size(); }

  /// Automorphism generators of the shared graph restricted to literals.
  const std::vector<LiteralPermutation>& literal_generators();

 private:
  const Hamiltonian* h_;
  ColoredDigraph shared_;
  gi::CompactGraph compact_;
  std::map<gi::Certificate, std::size_t> by_certificate_;
  std::unordered_map<Bitmask, gi::Certificate> memo_;
  std::vector<Bitmask> reps_;
  std::optional<std::vector<LiteralPermutation>> literal_generators_;
};

/// Literal form of the class test: the first v in reps whose graph is
/// isomorphic to u's, by pairwise isomorphism calls.
std::optional<Bitmask> find_representative(Bitmask u,
                                           const std::vector<Bitmask>& reps,
                                           const ColoredDigraph& shared);

struct EffectiveVertices {
  Bitmask seed = 0;
  std::vector<Bitmask> reps;
  std::size_t visited_count = 0;
};

/// Depth-first discovery of one representative per class in the seed's
/// component. Neighbours are visited in generator order. With `threads` > 1
/// the certificates of a vertex's neighbours are computed concurrently; the
/// result does not depend on the thread count. Classes may span components,
/// so `finder` must not hold representatives yet (std::invalid_argument).
EffectiveVertices find_effective_vertices(RepresentativeFinder& finder,
                                          Bitmask seed, int threads = 1);
EffectiveVertices find_effective_vertices(const Hamiltonian& h,
                                          std::optional<Bitmask> seed, Rng& rng);

struct EffectiveGraph {
  int n = 0;
  Bitmask seed = 0;
  std::vector<Bitmask> reps;
  /// omega[i][j]: total weight from reps[i] into the class of reps[j].
  std::vector<std::vector<Rational>> omega;
  std::vector<Rational> boundary;
  std::vector<std::int64_t> class_sizes;
  std::int64_t component_size = 1;
  std::size_t visited_count = 0;
};

/// Builds omega and boundary weights for the representatives and fills in
/// class sizes. Throws InconsistentEffectiveGraph when sizes fail.
EffectiveGraph find_effective_graph(RepresentativeFinder& finder,
                                    Components& components,
                                    const EffectiveVertices& vertices);
EffectiveGraph find_effective_graph(const Hamiltonian& h,
                                    std::optional<Bitmask> seed, Rng& rng);

/// Integer class sizes from ratios of omega along a breadth-first spanning
/// tree rooted at reps[0], scaled to sum to component_size.
std::vector<std::int64_t> class_sizes(const EffectiveGraph& eg);

/// H'[u][u] = w(u, inf) - omega[u][u]; H'[u][v] = -omega[u][v].
std::vector<std::vector<Rational>> effective_hamiltonian(const EffectiveGraph& eg);
Eigen::MatrixXd to_dense(const std::vector<std::vector<Rational>>& m);

struct SolverOptions {
  double tol = 1e-12;
  std::size_t max_iter = 1000000;
  std::uint64_t seed = 0x5eed;
  /// Also estimate the second eigenvalue.
  bool excited = true;
};

struct GroundSolution {
  double energy = 0.0;
  /// Positive, normalized so that sum_u |[u]| phi(u)^2 = 1.
  Eigen::VectorXd amplitudes;
  double residual = 0.0;
  std::size_t iterations = 0;
  std::optional<double> excited_energy;
  bool excited_converged = false;
  bool degenerate = false;
};

/// Perron vector of H' by power iteration on c I - D^(1/2) H' D^(-1/2),
/// D = diag(class sizes). Throws NonConvergence.
GroundSolution ground_state(const Eigen::MatrixXd& h_eff,
                            const std::vector<std::int64_t>& sizes,
                            const SolverOptions& options = {});

/// Pr[u] = |[u]| phi(u)^2 / sum_v |[v]| phi(v)^2.
std::vector<double> class_distribution(const GroundSolution& gs,
                                       const std::vector<std::int64_t>& sizes);

struct OrbitResult {
  std::vector<Bitmask> members;  // sorted
  bool complete = true;
};

/// Members of u's class inside its component: the literal set of u's
/// assignment is closed under the generators, and every image that is a
/// valid assignment in the same component is kept. Stops after `cap` literal
/// sets and reports complete = false.
OrbitResult orbit_members(Bitmask u, int n,
                          const std::vector<LiteralPermutation>& generators,
                          Components& components, std::size_t cap);

/// Random generator walk from u that stops on a valid assignment of the
/// same component. Used when the orbit is not enumerated in full; not
/// uniform in general.
Bitmask orbit_walk(Bitmask u, int n,
                   const std::vector<LiteralPermutation>& generators,
                   Components& components, Rng& rng);

struct ComponentResult {
  Bitmask key = 0;  // Components::key of the component
  EffectiveGraph graph;
  GroundSolution ground;
  std::vector<double> probabilities;
  std::vector<OrbitResult> orbits;  // per rep, filled when sampling
};

/// Full pipeline for the component of `seed`.
ComponentResult solve_component(RepresentativeFinder& finder,
                                Components& components, Bitmask seed,
                                const SolverOptions& options, int threads = 1);

struct Shot {
  std::size_t component = 0;  // index into SampleReport::components
  Bitmask representative = 0;
  Bitmask member = 0;
};

struct SampleOptions {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::size_t orbit_cap = 1 << 16;
  int threads = 1;
  SolverOptions solver;
};

struct SampleReport {
  std::uint64_t seed = 0;
  std::vector<ComponentResult> components;  // in order of first appearance
  std::vector<Shot> shots;
  bool approximate_members = false;
};

/// Each shot draws a uniform basis state, which selects a component; the
/// pipeline of a component runs once, started from the first state drawn in
/// it. A class is drawn from that component's distribution and a member of
/// the class uniformly from its orbit. With zero shots the component of a
/// single uniform draw is solved and reported.
SampleReport sample(const Hamiltonian& h, const SampleOptions& options);

}  // namespace stoqsym

#endif  // STOQSYM_EFFECTIVE_HPP
