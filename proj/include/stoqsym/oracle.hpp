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

// Reference computations for small registers. Nothing here reuses the
// hypercube or graph code: matrices are assembled from single-qubit Pauli
// actions and equivalence classes come from exhaustive automorphism search.

#ifndef STOQSYM_ORACLE_HPP
#define STOQSYM_ORACLE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "stoqsym/effective.hpp"
#include "stoqsym/hamiltonian.hpp"
#include "stoqsym/rng.hpp"

namespace stoqsym::oracle {

class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Matrix of H in the computational basis. rows[x] holds the exact nonzero
/// entries <x|H|y>; matrix is the same in double precision.
struct DenseOperator {
  int n = 0;
  std::vector<std::map<Bitmask, Rational>> rows;
  Eigen::MatrixXd matrix;
};

/// Any real coefficients are accepted (perturbations need not be
/// stoquastic). Throws CapExceeded when h.n > cap, std::invalid_argument
/// when a Y word has an imaginary matrix element.
DenseOperator dense_hamiltonian(const Hamiltonian& h, int cap = 12);

/// Principal submatrix on `basis` (row i of the result is basis[i]).
Eigen::MatrixXd restrict_to(const DenseOperator& op, const std::vector<Bitmask>& basis);

struct ExactGround {
  double energy = 0.0;
  double excited = 0.0;  // equals energy for a 1x1 matrix
  double gap = 0.0;
  Eigen::VectorXd vector;  // unit norm, nonnegative sum
  double residual = 0.0;
};

ExactGround exact_ground(const Eigen::MatrixXd& m);

using ClassPartition = std::vector<std::vector<Bitmask>>;

enum class ClassMode {
  /// Every bijection of the 2^n basis states (n <= 3).
  Full,
  /// Maps x -> pi(x) xor c only (n <= 8). The blocks are orbits of a
  /// subgroup, so the true classes are unions of them.
  Restricted,
};

/// Orbits of the weight-preserving automorphisms of the basis-state graph
/// (diagonal entries act as weights to the boundary vertex). Blocks and
/// their members are sorted.
ClassPartition brute_force_classes(const Hamiltonian& h, ClassMode mode);

/// Number of affine automorphisms x -> pi(x) xor c (n <= 8).
std::size_t count_signed_permutation_automorphisms(const Hamiltonian& h);

/// Partition of all 2^n basis states by RepresentativeFinder certificates,
/// in the same normal form as brute_force_classes.
ClassPartition certificate_classes(const Hamiltonian& h);

struct EffectiveDiagnostics {
  double energy_error = 0.0;
  double total_variation = 0.0;
  double amplitude_spread = 0.0;
  /// Classes whose counted size differs from the reported class size.
  std::size_t size_mismatches = 0;
  std::size_t component_vertices = 0;
  bool passed(double tol = 1e-9) const {
    return energy_error <= tol && total_variation <= tol &&
           amplitude_spread <= tol && size_mismatches == 0;
  }
};

/// Dense check of one solved component: ground energy of the component
/// block, total variation between the class distribution and the exact
/// mass of each class (membership by certificate lookup), and the largest
/// amplitude spread inside one class.
EffectiveDiagnostics verify_effective(const Hamiltonian& h, const ComponentResult& result,
                                      RepresentativeFinder& finder, int cap = 10);

/// Weighted Cheeger ratio of the vertex set `in_set` (indexed by basis
/// state) for the ground vector phi of op.
double cheeger_ratio(const DenseOperator& op, const Eigen::VectorXd& phi,
                     const std::vector<bool>& in_set);

struct PerturbationReport {
  double gap = 0.0;
  double expectation = 0.0;  // <Delta> in the ground state of H
  bool applicable = false;   // gap > <Delta>
  double tan2 = 0.0;
  double fidelity_bound = 0.0;  // 1 - (pi^2/4) tan^4
  double exact_fidelity = 0.0;
  /// sqrt(1 - F), from the part of the perturbed ground vector orthogonal to
  /// the unperturbed one (accurate when F rounds to 1).
  double sin_angle = 0.0;
  /// (pi/2) ||(I - rho_D) Delta rho||_F / (lambda_1(H) - lambda_0(H + Delta)),
  /// an upper bound on sqrt(1 - F) that precedes the tan^2 form.
  double projector_bound = 0.0;
  bool projector_bound_applicable = false;
  double delta_norm = 0.0;      // spectral norm of Delta
  double delta_frobenius = 0.0;
  double h_frobenius = 0.0;
};

PerturbationReport perturbation_bound(const Hamiltonian& h, const Hamiltonian& delta,
                                      int cap = 10);

/// Perturbation with coefficients delta * u_b * |c_b|, u_b uniform in
/// [-1, 1], on every stored term, so that ||Delta||_F <= delta ||H||_F.
Hamiltonian relative_perturbation(const Hamiltonian& h, double delta, Rng& rng);

/// Frobenius norm of the matrix of h: sqrt(2^n sum_b c_b^2).
double frobenius_norm(const Hamiltonian& h);

struct SimpleGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, no repeats
};

struct GiReduction {
  Hamiltonian h;
  Bitmask first = 0;   // qubits of the first graph
  Bitmask second = 0;  // qubits of the second graph
};

/// ZZ Hamiltonian on the disjoint union of the two graphs' vertices.
GiReduction gi_reduction(const SimpleGraph& s, const SimpleGraph& t);

/// Isomorphism by trying every vertex bijection (vertices <= 9).
bool naive_isomorphic(const SimpleGraph& s, const SimpleGraph& t);

SimpleGraph random_graph(Rng& rng, int vertices, double edge_probability);

struct RandomOptions {
  int n_min = 1;
  int n_max = 6;
  int k_max = 3;
  int max_terms = 8;
  bool allow_y = true;
  /// Add single-qubit X terms until the graph of basis states is connected.
  bool connected = false;
  /// Coefficients are multiples of 1/granularity.
  int granularity = 4;
};

/// Random valid stoquastic Hamiltonian on a coarse coefficient grid (so
/// accidental symmetries are common).
Hamiltonian random_stoquastic(Rng& rng, const RandomOptions& options);

}  // namespace stoqsym::oracle

#endif  // STOQSYM_ORACLE_HPP
