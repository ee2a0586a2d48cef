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

#ifndef STOQSYM_HYPERCUBE_HPP
#define STOQSYM_HYPERCUBE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stoqsym/hamiltonian.hpp"

namespace stoqsym {

/// Vertex of the weighted hypercube graph: a basis state X_b, or the
/// boundary vertex that carries the diagonal potential.
struct VertexId {
  bool infinity = false;
  Bitmask bits = 0;

  static VertexId interior(Bitmask b) { return {false, b}; }
  static VertexId boundary() { return {true, 0}; }
  friend bool operator==(const VertexId&, const VertexId&) = default;
};

struct WeightedNeighbor {
  Bitmask vertex;
  Rational weight;
};

/// Sign of the Y-term phase i^(2 b.b' - hw(b)) for even hw(b), computed in
/// integer arithmetic: (-1)^((2 b.b' - hw(b)) / 2).
inline int y_phase(Bitmask b, Bitmask b_prime) {
  int exponent = dot(b, b_prime) - hamming_weight(b) / 2;
  return (exponent & 1) ? -1 : 1;
}

/// Weight of the edge {X_b', X_(b' xor b)}: alpha_b + i^(2 b.b' - hw b) beta_b.
/// Zero when b is not an edge generator.
Rational edge_weight(const Hamiltonian& h, Bitmask b_prime, Bitmask b);

/// Weight of the edge {X_b', infinity}: sum_b (-1)^(b.b') kappa_b.
Rational boundary_weight(const Hamiltonian& h, Bitmask b_prime);

/// Interior neighbours of X_u with nonzero weight, in generator order. The
/// boundary vertex is never included.
std::vector<WeightedNeighbor> neighbors(const Hamiltonian& h, Bitmask u);

/// Implicit view of the graph with the generator list cached. Never
/// materializes the 2^n vertices.
class HypercubeGraph {
 public:
  explicit HypercubeGraph(const Hamiltonian& h);

  const Hamiltonian& hamiltonian() const { return *h_; }
  int qubits() const { return h_->n; }
  const std::vector<Bitmask>& generators() const { return generators_; }
  int max_degree() const { return static_cast<int>(generators_.size()); }

  Rational edge_weight(Bitmask b_prime, Bitmask b) const;
  Rational boundary_weight(Bitmask b_prime) const;
  std::vector<WeightedNeighbor> neighbors(Bitmask u) const;
  /// Weight between two interior vertices (0 when not adjacent).
  Rational weight(Bitmask u, Bitmask v) const;

 private:
  struct Generator {
    Bitmask support;
    Rational alpha;
    Rational beta;
  };
  const Hamiltonian* h_;
  std::vector<Bitmask> generators_;
  std::vector<Generator> terms_;
  std::vector<std::pair<Bitmask, Rational>> potential_;
};

/// Connected components of the interior graph. When no generator can lose
/// its edge to a Y-phase cancellation (alpha_b = |beta_b|), the component of
/// u is the coset u + span(K) and is handled algebraically. Otherwise
/// components are found by breadth-first search, limited to `bfs_cap`
/// vertices per component.
class Components {
 public:
  explicit Components(const Hamiltonian& h, std::size_t bfs_cap = std::size_t{1} << 22);

  /// True when every component is a full coset of the generator span.
  bool cosets() const { return cosets_; }
  /// Canonical identifier of u's component (shared by all its vertices).
  Bitmask key(Bitmask u);
  std::int64_t size(Bitmask u);
  bool same(Bitmask u, Bitmask v) { return key(u) == key(v); }

 private:
  const std::vector<Bitmask>& explore(Bitmask u);

  HypercubeGraph graph_;
  std::vector<Bitmask> basis_;
  bool cosets_ = true;
  std::size_t bfs_cap_;
  std::map<Bitmask, std::vector<Bitmask>> explored_;  // key -> sorted members
};

/// Graphviz rendering of the full graph (n <= 5): interior edges labelled by
/// weight, boundary weights attached as dangling labelled edges.
std::string export_gamma_dot(const Hamiltonian& h);

}  // namespace stoqsym

#endif  // STOQSYM_HYPERCUBE_HPP
