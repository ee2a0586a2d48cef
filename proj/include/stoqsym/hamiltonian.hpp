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

#ifndef STOQSYM_HAMILTONIAN_HPP
#define STOQSYM_HAMILTONIAN_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stoqsym/bitmask.hpp"
#include "stoqsym/rational.hpp"

namespace stoqsym {

enum class PauliType { X, Y, Z };

char pauli_char(PauliType t);

/// Coefficient map indexed by support bitmask. Ordered so iteration (and
/// therefore every downstream construction) is deterministic.
using CoefficientMap = std::map<Bitmask, Rational>;

/// k-local Hamiltonian
///
///   H = -sum_b alpha_b X_b - sum_b beta_b Y_b + sum_b kappa_b Z_b
///
/// The signs are applied by the library: the maps hold alpha, beta and kappa
/// exactly as written in the input file. Zero coefficients are never stored.
struct Hamiltonian {
  int n = 0;
  CoefficientMap alpha;
  CoefficientMap beta;
  CoefficientMap kappa;

  const CoefficientMap& terms(PauliType t) const;
  CoefficientMap& terms(PauliType t);

  /// Largest Hamming weight over all stored supports (0 for no terms).
  int locality() const;
  bool empty() const { return alpha.empty() && beta.empty() && kappa.empty(); }
  std::size_t term_count() const {
    return alpha.size() + beta.size() + kappa.size();
  }

  /// Adds coefficient-wise; zero sums are removed.
  Hamiltonian operator+(const Hamiltonian& other) const;

  friend bool operator==(const Hamiltonian&, const Hamiltonian&) = default;
};

/// Parse failure carrying the 1-based line number (0 when not line-specific).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the line-oriented text format:
///
///   # comment
///   n 3
///   X 100 1
///   Z 010 -1
Hamiltonian parse_hamiltonian(std::string_view text);

/// Canonical serialization: `n` first, then directives sorted by
/// (type, support string).
std::string serialize_hamiltonian(const Hamiltonian& h);

struct Violation {
  std::string rule;  // stable identifier, e.g. "beta-exceeds-alpha"
  PauliType type;
  Bitmask support;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

/// Checks stoquasticity and the structural constraints of the model:
/// alpha_b >= 0, |beta_b| <= alpha_b, beta only on even-weight supports,
/// no identity supports, supports inside the n-qubit register.
ValidationReport validate_stoquastic(const Hamiltonian& h);

/// The edge generators K = { b : alpha_b != 0 }, in increasing bitmask order.
std::vector<Bitmask> edge_generators(const Hamiltonian& h);

/// Rank of the generators as vectors over GF(2).
int generator_rank(const std::vector<Bitmask>& generators);

/// Reduces `v` against a GF(2) basis (as produced by gf2_basis) to the
/// canonical representative of its coset modulo the span.
Bitmask gf2_reduce(Bitmask v, const std::vector<Bitmask>& basis);

/// Reduced row-echelon basis of the span of `vectors`, one vector per pivot,
/// each pivot bit cleared in every other basis vector.
std::vector<Bitmask> gf2_basis(const std::vector<Bitmask>& vectors);

}  // namespace stoqsym

#endif  // STOQSYM_HAMILTONIAN_HPP
