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

// Clausal theory graph: a polynomial-size vertex-colored digraph that encodes
// a Hamiltonian term by term through gadgets. Attaching an assignment star for
// a basis state u gives G(u); two basis states are equivalent exactly when
// their graphs are isomorphic under a color-preserving map.

#ifndef STOQSYM_CTG_HPP
#define STOQSYM_CTG_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stoqsym/hamiltonian.hpp"

namespace stoqsym {

enum class VertexKind : std::uint8_t {
  Literal,
  Assignment,
  Generator,
  WeightGenerator,
  WeightGeneratorCluster,
  Clause,
  ClauseCluster,
};

const char* kind_name(VertexKind kind);

/// (kind tag, exact value). Kinds without a Hamiltonian-dependent color carry
/// no value. Colors are totally ordered: by kind, then by value.
struct VertexColor {
  VertexKind kind = VertexKind::Literal;
  std::optional<Rational> value;

  std::string to_string() const;
  friend bool operator==(const VertexColor&, const VertexColor&) = default;
  friend std::strong_ordering operator<=>(const VertexColor& a,
                                          const VertexColor& b);
};

/// Kind-specific identity of a vertex.
///   Literal:                  qubit, negated
///   Assignment:               pattern = the basis state u
///   Generator / clusters:     support
///   WeightGenerator / Clause: support and pattern; literal i of the vertex
///                             is -Z_i iff bit i of pattern is set
struct VertexLabel {
  int qubit = -1;
  bool negated = false;
  Bitmask support = 0;
  Bitmask pattern = 0;

  friend auto operator<=>(const VertexLabel&, const VertexLabel&) = default;
};

struct CtgVertex {
  VertexKind kind;
  VertexLabel label;
  VertexColor color;
};

/// Vertex-colored digraph. An undirected edge {u, v} is stored as the two
/// arcs (u, v) and (v, u). Vertices are identified by (kind, label).
class ColoredDigraph {
 public:
  ColoredDigraph() = default;
  explicit ColoredDigraph(int qubits) : qubits_(qubits) {}

  int qubits() const { return qubits_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const std::vector<CtgVertex>& vertices() const { return vertices_; }
  const CtgVertex& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const std::set<std::pair<int, int>>& arcs() const { return arcs_; }
  bool has_arc(int u, int v) const { return arcs_.contains({u, v}); }

  /// Adds the vertex, or returns the existing index for the same
  /// (kind, label). Throws if an existing vertex has a different color.
  int add_vertex(const CtgVertex& v);
  std::optional<int> find(VertexKind kind, const VertexLabel& label) const;

  void add_arc(int from, int to);
  void add_edge(int a, int b) {
    add_arc(a, b);
    add_arc(b, a);
  }

  /// Copy with vertex `index` and its arcs removed; later indices shift
  /// down by one.
  ColoredDigraph without_vertex(int index) const;

  /// Index of literal (-1)^negated Z_qubit. Literals always occupy the
  /// first 2n slots.
  static int literal_index(int qubit, bool negated) {
    return 2 * qubit + (negated ? 1 : 0);
  }

  /// Human readable vertex name, e.g. "-Z1", "X_100", "c_100[Z0]".
  std::string vertex_name(int index) const;

  friend bool operator==(const ColoredDigraph& a, const ColoredDigraph& b) {
    return a.qubits_ == b.qubits_ && a.arcs_ == b.arcs_ &&
           a.same_vertices(b);
  }

 private:
  bool same_vertices(const ColoredDigraph& other) const;

  int qubits_ = 0;
  std::vector<CtgVertex> vertices_;
  std::map<std::pair<VertexKind, VertexLabel>, int> index_;
  std::set<std::pair<int, int>> arcs_;
};

/// Raised by reconstruct_hamiltonian on graphs that are not the image of a
/// valid Hamiltonian.
class MalformedGadget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Assignment-free graph: 2n literals plus the generator, weight-generator and
/// clause gadgets of every term of h. Throws std::invalid_argument when h
/// fails validate_stoquastic.
ColoredDigraph build_shared(const Hamiltonian& h);

/// shared plus the star gadget A(X_u) joined to the literals (-1)^(u_i) Z_i.
ColoredDigraph attach_assignment(const ColoredDigraph& shared, Bitmask u);

/// Inverse map: decodes alpha from generator colors, |beta| and its sign from
/// the weight-generator sets, |kappa| and its sign from clause clusters.
Hamiltonian reconstruct_hamiltonian(const ColoredDigraph& shared, int n);

/// Expected vertex count of build_shared(h):
///   2n + |{alpha_b}| + sum_beta (2^(hw-1) + 1) + sum_kappa (2^(hw-1) + 1)
std::size_t expected_vertex_count(const Hamiltonian& h);

/// Graphviz: shape per kind, color values in labels, arrowheads only on
/// one-way arcs.
std::string export_ctg_dot(const ColoredDigraph& g);

/// JSON document {"qubits", "vertices": [...], "edges": [...]}.
std::string export_ctg_json(const ColoredDigraph& g);

}  // namespace stoqsym

#endif  // STOQSYM_CTG_HPP
