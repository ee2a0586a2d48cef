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

// Canonical labeling of vertex-colored digraphs by individualization and
// refinement.
//
// The partition is refined to the coarsest equitable one, where equitable
// means every vertex of a cell sees the same number of one-way out-arcs,
// one-way in-arcs and two-way edges into every other cell. The search tree
// individualizes one vertex of a target cell per level. Three pruning rules
// keep it small:
//   - refinement traces are isomorphism invariant, so a subtree whose trace
//     sorts below the best leaf's (and differs from the first leaf's) holds
//     no useful leaf;
//   - a leaf whose labelled graph equals the first or best leaf yields an
//     automorphism, and the search unwinds to the common ancestor;
//   - children in one orbit of the automorphisms fixing the current path
//     pointwise are explored once.
// The automorphisms found along the way generate the full automorphism group.

#ifndef STOQSYM_GI_HPP
#define STOQSYM_GI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stoqsym/ctg.hpp"

namespace stoqsym::gi {

/// perm[v] is the image of vertex v.
using Permutation = std::vector<int>;

/// Bijection from the vertices of one graph to another: mapping[v] = image.
using VertexMapping = std::vector<int>;

/// Search-ready adjacency. Colors are dense ranks of the sorted palette.
struct CompactGraph {
  int n = 0;
  std::vector<int> color;
  std::vector<std::string> palette;
  std::vector<std::vector<int>> out_only;
  std::vector<std::vector<int>> in_only;
  std::vector<std::vector<int>> both;

  static CompactGraph from(const ColoredDigraph& g);

  /// Copy with one extra vertex of color `color_name` (inserted into the
  /// palette at its sorted position, ties with an existing entry merge)
  /// joined by two-way edges to `neighbours`.
  CompactGraph with_vertex(const VertexColor& color,
                           const std::vector<int>& neighbours) const;

  std::vector<VertexColor> palette_colors;
};

/// Canonical form: equal for two graphs iff they are isomorphic under a
/// color-preserving, direction-preserving bijection.
struct Certificate {
  std::string bytes;
  friend bool operator==(const Certificate&, const Certificate&) = default;
  friend auto operator<=>(const Certificate&, const Certificate&) = default;
};

struct CanonicalForm {
  /// labeling[v] = canonical position of vertex v.
  std::vector<int> labeling;
  Certificate certificate;
  std::vector<Permutation> generators;
  std::size_t tree_nodes = 0;
};

CanonicalForm canonicalize(const CompactGraph& g);

Certificate canonical_certificate(const ColoredDigraph& g);

/// Color, edge and direction preserving bijection g1 -> g2, if any.
std::optional<VertexMapping> isomorphic(const ColoredDigraph& g1,
                                        const ColoredDigraph& g2);

/// Generating set of the color-preserving automorphism group.
std::vector<Permutation> automorphism_generators(const ColoredDigraph& g);

/// Checks that `mapping` is a bijection preserving colors and every arc.
bool verify_mapping(const ColoredDigraph& g1, const ColoredDigraph& g2,
                    const VertexMapping& mapping);

}  // namespace stoqsym::gi

#endif  // STOQSYM_GI_HPP
