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

#include <deque>
#include <map>

#include <gtest/gtest.h>

#include "stoqsym/hypercube.hpp"
#include "stoqsym/oracle.hpp"
#include "test_support.hpp"

namespace stoqsym {
namespace {

TEST(Hypercube, WorkedExampleWeights) {
  Hamiltonian h = testing::h010();
  Bitmask b100 = parse_bitmask("100", 3);
  EXPECT_EQ(edge_weight(h, b100, b100), Rational(1));
  EXPECT_EQ(boundary_weight(h, b100), Rational(-1));
  EXPECT_EQ(boundary_weight(h, parse_bitmask("010", 3)), Rational(3));
  std::map<std::string, Rational> got;
  for (const auto& nb : neighbors(h, b100)) got[format_bitmask(nb.vertex, 3)] = nb.weight;
  EXPECT_EQ(got, (std::map<std::string, Rational>{{"000", 1}, {"110", 1}, {"101", 1}}));
}

TEST(Hypercube, YPhaseCancellationRemovesEdges) {
  // -X_11 - Y_11: <00|.|11> has weight alpha - beta = 0 from 00, alpha + beta from 01.
  Hamiltonian h = parse_hamiltonian("n 2\nX 11 1\nY 11 1\n");
  EXPECT_TRUE(neighbors(h, 0b00).empty());
  ASSERT_EQ(neighbors(h, 0b01).size(), 1u);
  EXPECT_EQ(neighbors(h, 0b01)[0].weight, Rational(2));
}

// The weighted graph must reproduce the matrix: -w(u, u^b) off the diagonal
// and the boundary weight on it.
TEST(Hypercube, WeightsMatchDenseMatrix) {
  Rng rng(2024);
  oracle::RandomOptions options;
  options.n_max = 6;
  options.max_terms = 10;
  for (int trial = 0; trial < 200; ++trial) {
    Hamiltonian h = oracle::random_stoquastic(rng, options);
    HypercubeGraph g(h);
    oracle::DenseOperator op = oracle::dense_hamiltonian(h);
    for (Bitmask u = 0; u < (Bitmask{1} << h.n); ++u) {
      std::map<Bitmask, Rational> expected;
      Rational diagonal = 0;
      for (const auto& [v, x] : op.rows[u]) {
        if (v == u) {
          diagonal = x;
        } else {
          expected[v] = -x;
        }
      }
      EXPECT_EQ(g.boundary_weight(u), diagonal);
      std::map<Bitmask, Rational> got;
      for (const auto& nb : g.neighbors(u)) got[nb.vertex] = nb.weight;
      EXPECT_EQ(got, expected) << serialize_hamiltonian(h);
      for (const auto& [v, w] : expected) EXPECT_EQ(g.weight(u, v), w);
    }
  }
}

// Oracle: breadth-first search over nonzero off-diagonal matrix entries.
std::vector<Bitmask> dense_component(const oracle::DenseOperator& op, Bitmask u) {
  std::vector<bool> seen(op.rows.size(), false);
  std::deque<Bitmask> queue{u};
  seen[u] = true;
  std::vector<Bitmask> out;
  while (!queue.empty()) {
    Bitmask x = queue.front();
    queue.pop_front();
    out.push_back(x);
    for (const auto& [y, w] : op.rows[x]) {
      if (y != x && !w.is_zero() && !seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  return out;
}

TEST(Components, MatchDenseConnectivity) {
  Rng rng(77);
  oracle::RandomOptions options;
  options.n_max = 6;
  options.max_terms = 6;
  int non_coset = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Hamiltonian h = oracle::random_stoquastic(rng, options);
    oracle::DenseOperator op = oracle::dense_hamiltonian(h);
    Components comps(h);
    if (!comps.cosets()) ++non_coset;
    for (Bitmask u = 0; u < (Bitmask{1} << h.n); ++u) {
      std::vector<Bitmask> members = dense_component(op, u);
      EXPECT_EQ(comps.size(u), static_cast<std::int64_t>(members.size()));
      for (Bitmask v : members) EXPECT_TRUE(comps.same(u, v));
    }
  }
  EXPECT_GT(non_coset, 0);
}

TEST(Components, CapIsEnforced) {
  Hamiltonian h = parse_hamiltonian("n 4\nX 1100 1\nY 1100 1\nX 0011 1\n");
  Components comps(h, 1);
  EXPECT_THROW(comps.size(0b0010), std::length_error);
}

TEST(Hypercube, GammaExport) {
  std::string dot = export_gamma_dot(testing::h010());
  EXPECT_NE(dot.find("graph"), std::string::npos);
  EXPECT_NE(dot.find("100"), std::string::npos);
  EXPECT_THROW(export_gamma_dot(testing::hamming(6)), std::length_error);
}

}  // namespace
}  // namespace stoqsym
