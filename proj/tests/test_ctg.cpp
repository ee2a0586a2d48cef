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

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "json.hpp"
#include "stoqsym/ctg.hpp"
#include "stoqsym/oracle.hpp"
#include "test_support.hpp"

namespace stoqsym {
namespace {

std::map<VertexKind, int> kind_counts(const ColoredDigraph& g) {
  std::map<VertexKind, int> out;
  for (const CtgVertex& v : g.vertices()) ++out[v.kind];
  return out;
}

TEST(Ctg, WorkedExampleShape) {
  ColoredDigraph g = build_shared(testing::h010());
  EXPECT_EQ(g.vertex_count(), 15);
  auto counts = kind_counts(g);
  EXPECT_EQ(counts[VertexKind::Literal], 6);
  EXPECT_EQ(counts[VertexKind::Generator], 3);
  EXPECT_EQ(counts[VertexKind::Clause], 3);
  EXPECT_EQ(counts[VertexKind::ClauseCluster], 3);
  for (const CtgVertex& v : g.vertices()) {
    if (v.kind == VertexKind::Generator) EXPECT_EQ(v.color.value, Rational(1));
    if (v.kind == VertexKind::ClauseCluster) EXPECT_EQ(v.color.value, Rational(2));
  }
  // The clause of Z_010 (negative coefficient) sits on the negated literal.
  auto clause = g.find(VertexKind::Clause, {-1, false, 0b010, 0b010});
  ASSERT_TRUE(clause.has_value());
  EXPECT_TRUE(g.has_arc(*clause, ColoredDigraph::literal_index(1, true)));
  EXPECT_FALSE(g.has_arc(*clause, ColoredDigraph::literal_index(1, false)));
}

TEST(Ctg, AssignmentStar) {
  ColoredDigraph g = attach_assignment(build_shared(testing::h010()), parse_bitmask("100", 3));
  EXPECT_EQ(g.vertex_count(), 16);
  int a = g.vertex_count() - 1;
  EXPECT_EQ(g.vertex(a).kind, VertexKind::Assignment);
  std::set<int> joined;
  for (auto [x, y] : g.arcs()) {
    if (x == a) joined.insert(y);
  }
  EXPECT_EQ(joined, (std::set<int>{ColoredDigraph::literal_index(0, true),
                                   ColoredDigraph::literal_index(1, false),
                                   ColoredDigraph::literal_index(2, false)}));
}

TEST(Ctg, EmptyHamiltonianHasIsolatedLiterals) {
  ColoredDigraph g = build_shared(parse_hamiltonian("n 4\n"));
  EXPECT_EQ(g.vertex_count(), 8);
  EXPECT_TRUE(g.arcs().empty());
}

TEST(Ctg, RejectsInvalidHamiltonian) {
  EXPECT_THROW(build_shared(parse_hamiltonian("n 2\nX 11 -1\n")), std::invalid_argument);
}

// Independent count: one vertex per literal and generator, and for each Y or
// Z term a cluster plus every half of the sign patterns on its support.
std::size_t count_by_patterns(const Hamiltonian& h) {
  std::size_t total = 2 * static_cast<std::size_t>(h.n) + h.alpha.size();
  for (const auto* m : {&h.beta, &h.kappa}) {
    for (const auto& [b, c] : *m) {
      std::size_t patterns = 0;
      for (Bitmask p = 0; p <= b; ++p) {
        if ((p & ~b) == 0) ++patterns;
      }
      total += 1 + patterns / 2;
    }
  }
  return total;
}

TEST(Ctg, VertexCountFormula) {
  Rng rng(31);
  oracle::RandomOptions options;
  options.n_max = 8;
  options.max_terms = 12;
  for (int i = 0; i < 300; ++i) {
    Hamiltonian h = oracle::random_stoquastic(rng, options);
    ColoredDigraph g = build_shared(h);
    EXPECT_EQ(static_cast<std::size_t>(g.vertex_count()), expected_vertex_count(h));
    EXPECT_EQ(static_cast<std::size_t>(g.vertex_count()), count_by_patterns(h));
  }
}

// Weight-generator patterns are the states p within the support where the Y
// phase lowers the edge weight to alpha - |beta|; read off the dense matrix.
TEST(Ctg, WeightGeneratorSetsMatchMatrixPhases) {
  for (const char* text : {"n 2\nX 11 2\nY 11 1\n", "n 2\nX 11 2\nY 11 -1\n",
                           "n 4\nX 1111 3\nY 1111 2\n", "n 4\nX 1111 3\nY 1111 -2\n",
                           "n 3\nX 101 1\nY 101 1/2\n"}) {
    Hamiltonian h = parse_hamiltonian(text);
    ColoredDigraph g = build_shared(h);
    oracle::DenseOperator op = oracle::dense_hamiltonian(h);
    const auto& [b, alpha] = *h.alpha.begin();
    std::set<Bitmask> expected;
    for (Bitmask p = 0; p <= b; ++p) {
      if ((p & ~b) != 0) continue;
      Rational w = -op.rows[p].at(p ^ b);
      if (w < alpha) expected.insert(p);
    }
    std::set<Bitmask> got;
    for (const CtgVertex& v : g.vertices()) {
      if (v.kind == VertexKind::WeightGenerator) got.insert(v.label.pattern);
    }
    EXPECT_EQ(got, expected) << text;
  }
}

TEST(Ctg, ClauseSetsMatchDiagonalSigns) {
  for (const char* text : {"n 3\nZ 111 1\n", "n 3\nZ 111 -2\n", "n 2\nZ 11 -1\n"}) {
    Hamiltonian h = parse_hamiltonian(text);
    ColoredDigraph g = build_shared(h);
    oracle::DenseOperator op = oracle::dense_hamiltonian(h);
    const Bitmask b = h.kappa.begin()->first;
    std::set<Bitmask> expected;
    for (Bitmask p = 0; p <= b; ++p) {
      if ((p & ~b) == 0 && op.rows[p].at(p).sign() > 0) expected.insert(p);
    }
    std::set<Bitmask> got;
    for (const CtgVertex& v : g.vertices()) {
      if (v.kind == VertexKind::Clause) got.insert(v.label.pattern);
    }
    EXPECT_EQ(got, expected) << text;
  }
}

TEST(Ctg, ReconstructionInvertsConstruction) {
  Rng rng(4);
  oracle::RandomOptions options;
  options.n_max = 8;
  options.max_terms = 12;
  for (int i = 0; i < 300; ++i) {
    Hamiltonian h = oracle::random_stoquastic(rng, options);
    EXPECT_EQ(reconstruct_hamiltonian(build_shared(h), h.n), h) << serialize_hamiltonian(h);
  }
}

TEST(Ctg, ReconstructionRejectsTampering) {
  ColoredDigraph g = build_shared(testing::h010());
  auto clause = g.find(VertexKind::Clause, {-1, false, 0b010, 0b010});
  ASSERT_TRUE(clause.has_value());
  ColoredDigraph broken = g;
  broken.add_edge(*clause, ColoredDigraph::literal_index(1, false));
  EXPECT_THROW(reconstruct_hamiltonian(broken, 3), MalformedGadget);
  EXPECT_THROW(reconstruct_hamiltonian(g.without_vertex(*clause), 3), MalformedGadget);
}

TEST(Ctg, DotAndJsonExports) {
  ColoredDigraph g = attach_assignment(build_shared(testing::h010()), 0b001);
  std::string dot = export_ctg_dot(g);
  std::size_t nodes = 0;
  for (std::size_t pos = dot.find("label="); pos != std::string::npos; pos = dot.find("label=", pos + 1)) ++nodes;
  EXPECT_EQ(nodes, 16u);
  auto doc = nlohmann::json::parse(export_ctg_json(g));
  EXPECT_EQ(doc["qubits"], 3);
  EXPECT_EQ(doc["vertices"].size(), 16u);
}

}  // namespace
}  // namespace stoqsym
