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

#include <set>
#include <string>

#include <gtest/gtest.h>

#include "stoqsym/hamiltonian.hpp"
#include "stoqsym/oracle.hpp"
#include "test_support.hpp"

namespace stoqsym {
namespace {

int parse_error_line(const std::string& text) {
  try {
    parse_hamiltonian(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(Parse, WorkedExample) {
  Hamiltonian h = testing::h010();
  EXPECT_EQ(h.n, 3);
  EXPECT_EQ(h.alpha.size(), 3u);
  EXPECT_EQ(h.alpha.at(parse_bitmask("100", 3)), Rational(1));
  EXPECT_EQ(h.kappa.at(parse_bitmask("010", 3)), Rational(-1));
  EXPECT_EQ(h.kappa.at(parse_bitmask("001", 3)), Rational(1));
  EXPECT_TRUE(h.beta.empty());
  EXPECT_EQ(h.locality(), 1);
  // the leftmost character is qubit 0
  EXPECT_EQ(parse_bitmask("100", 3), Bitmask{1});
}

TEST(Parse, CommentsBlankLinesAndZeroCoefficients) {
  Hamiltonian h = parse_hamiltonian("# header\n\nn 2  # two qubits\r\nX 11 0.5\nZ 10 0\n");
  EXPECT_EQ(h.alpha.at(0b11), Rational(1, 2));
  EXPECT_TRUE(h.kappa.empty());
}

TEST(Parse, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("X 1 1\n"), 1);
  EXPECT_EQ(parse_error_line("n 2\nn 2\n"), 2);
  EXPECT_EQ(parse_error_line("n 2\nX 10 1\nW 10 1\n"), 3);
  EXPECT_EQ(parse_error_line("n 2\nX 100 1\n"), 2);
  EXPECT_EQ(parse_error_line("n 2\nX 1x 1\n"), 2);
  EXPECT_EQ(parse_error_line("n 2\nX 00 1\n"), 2);
  EXPECT_EQ(parse_error_line("n 2\nY 10 1\n"), 2);
  EXPECT_EQ(parse_error_line("n 2\nX 10 1\nX 10 2\n"), 3);
  EXPECT_EQ(parse_error_line("n 2\nX 10 one\n"), 2);
  EXPECT_EQ(parse_error_line("n 0\n"), 1);
  EXPECT_EQ(parse_error_line("n 63\n"), 1);
  EXPECT_EQ(parse_error_line("# nothing\n"), 0);
}

TEST(Parse, SerializationRoundTrips) {
  Rng rng(101);
  oracle::RandomOptions options;
  options.n_max = 8;
  options.max_terms = 12;
  options.granularity = 8;
  for (int i = 0; i < 300; ++i) {
    Hamiltonian h = oracle::random_stoquastic(rng, options);
    std::string text = serialize_hamiltonian(h);
    EXPECT_EQ(parse_hamiltonian(text), h) << text;
    EXPECT_EQ(serialize_hamiltonian(parse_hamiltonian(text)), text);
  }
}

TEST(Parse, SerializationIsCanonical) {
  Hamiltonian a = parse_hamiltonian("n 2\nZ 01 1\nX 10 1\nX 01 2\n");
  Hamiltonian b = parse_hamiltonian("n 2\nX 01 2\nX 10 1\nZ 01 1\n");
  EXPECT_EQ(serialize_hamiltonian(a), serialize_hamiltonian(b));
}

std::set<std::string> rules(const Hamiltonian& h) {
  std::set<std::string> out;
  for (const Violation& v : validate_stoquastic(h).violations) out.insert(v.rule);
  return out;
}

TEST(Validate, AcceptsWorkedExampleAndEmpty) {
  EXPECT_TRUE(validate_stoquastic(testing::h010()).ok);
  EXPECT_TRUE(validate_stoquastic(parse_hamiltonian("n 4\n")).ok);
}

TEST(Validate, ReportsEveryRule) {
  EXPECT_EQ(rules(parse_hamiltonian("n 2\nX 11 -1\n")), std::set<std::string>{"negative-alpha"});
  EXPECT_EQ(rules(parse_hamiltonian("n 2\nX 11 1\nY 11 2\n")),
            std::set<std::string>{"beta-exceeds-alpha"});
  EXPECT_EQ(rules(parse_hamiltonian("n 2\nY 11 1\n")),
            std::set<std::string>{"beta-exceeds-alpha"});
  EXPECT_TRUE(validate_stoquastic(parse_hamiltonian("n 2\nX 11 1\nY 11 -1\n")).ok);

  Hamiltonian h;
  h.n = 2;
  h.beta[0b01] = 1;
  h.alpha[0b01] = 1;
  h.kappa[0] = 1;
  h.kappa[0b100] = 1;
  h.alpha[0b10] = 0;
  auto found = rules(h);
  EXPECT_TRUE(found.contains("odd-weight-y"));
  EXPECT_TRUE(found.contains("identity-term"));
  EXPECT_TRUE(found.contains("support-range"));
  EXPECT_TRUE(found.contains("zero-coefficient"));
}

// Oracle: the span of the generators by closing {0} under xor.
std::set<Bitmask> span(const std::vector<Bitmask>& gens) {
  std::set<Bitmask> out{0};
  for (Bitmask g : gens) {
    std::set<Bitmask> next = out;
    for (Bitmask x : out) next.insert(x ^ g);
    out = next;
  }
  return out;
}

TEST(Gf2, RankAndReductionAgreeWithSpanEnumeration) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng.below(7));
    std::vector<Bitmask> gens;
    int count = static_cast<int>(rng.below(6));
    for (int i = 0; i < count; ++i) gens.push_back(rng.bits(n));
    std::set<Bitmask> s = span(gens);
    ASSERT_EQ(std::size_t{1} << generator_rank(gens), s.size());
    std::vector<Bitmask> basis = gf2_basis(gens);
    EXPECT_EQ(static_cast<int>(basis.size()), generator_rank(gens));
    for (Bitmask u = 0; u < (Bitmask{1} << n); ++u) {
      for (Bitmask v = 0; v < (Bitmask{1} << n); ++v) {
        EXPECT_EQ(gf2_reduce(u, basis) == gf2_reduce(v, basis), s.contains(u ^ v));
      }
    }
  }
}

TEST(Gf2, EdgeGeneratorsAreSortedAlphaSupports) {
  Hamiltonian h = parse_hamiltonian("n 3\nX 011 1\nX 100 2\nZ 111 1\nX 110 1\nY 110 1\n");
  EXPECT_EQ(edge_generators(h), (std::vector<Bitmask>{0b001, 0b011, 0b110}));
  EXPECT_EQ(generator_rank(edge_generators(testing::h010())), 3);
}

TEST(HamiltonianSum, DropsCancelledTerms) {
  Hamiltonian a = parse_hamiltonian("n 2\nX 10 1\nZ 01 1\n");
  Hamiltonian b = parse_hamiltonian("n 2\nZ 01 -1\nZ 11 2\n");
  Hamiltonian s = a + b;
  EXPECT_EQ(s, parse_hamiltonian("n 2\nX 10 1\nZ 11 2\n"));
  EXPECT_THROW(a + parse_hamiltonian("n 3\n"), std::invalid_argument);
}

}  // namespace
}  // namespace stoqsym
