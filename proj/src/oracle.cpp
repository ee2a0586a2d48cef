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

#include "stoqsym/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>

namespace stoqsym::oracle {

namespace {

inline std::size_t idx(Bitmask x) { return static_cast<std::size_t>(x); }

// Action of one Pauli word on |x>: the image basis state and the phase as a
// power of i.
struct PauliImage {
  Bitmask target;
  int i_power;
};

PauliImage apply_word(PauliType type, Bitmask support, Bitmask x, int n) {
  PauliImage out{x, 0};
  for (int q = 0; q < n; ++q) {
    if (!bit(support, q)) continue;
    const int xq = bit(x, q) ? 1 : 0;
    switch (type) {
      case PauliType::X:  // X|a> = |1-a>
        out.target ^= Bitmask{1} << q;
        break;
      case PauliType::Y:  // Y|a> = i (-1)^a |1-a>
        out.target ^= Bitmask{1} << q;
        out.i_power += 1 + 2 * xq;
        break;
      case PauliType::Z:  // Z|a> = (-1)^a |a>
        out.i_power += 2 * xq;
        break;
    }
  }
  out.i_power %= 4;
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

ClassPartition normalize(std::vector<std::vector<Bitmask>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

ClassPartition partition_from(UnionFind& uf, std::size_t count) {
  std::map<std::size_t, std::vector<Bitmask>> blocks;
  for (std::size_t x = 0; x < count; ++x) blocks[uf.find(x)].push_back(x);
  std::vector<std::vector<Bitmask>> out;
  for (auto& [root, members] : blocks) out.push_back(std::move(members));
  return normalize(std::move(out));
}

const Rational& entry(const DenseOperator& op, Bitmask x, Bitmask y) {
  static const Rational kZero;
  auto it = op.rows[idx(x)].find(y);
  return it == op.rows[idx(x)].end() ? kZero : it->second;
}

// True when f (as a table) maps every row of op onto the row of the image.
bool preserves(const DenseOperator& op, const std::vector<Bitmask>& f) {
  for (std::size_t x = 0; x < op.rows.size(); ++x) {
    const auto& row = op.rows[x];
    const auto& image_row = op.rows[idx(f[x])];
    if (row.size() != image_row.size()) return false;
    for (const auto& [y, value] : row) {
      auto it = image_row.find(f[idx(y)]);
      if (it == image_row.end() || !(it->second == value)) return false;
    }
  }
  return true;
}

// Calls visit(f) for every affine map x -> pi(x) xor c preserving op.
template <typename Visit>
void for_each_signed_permutation_automorphism(const DenseOperator& op, Visit visit) {
  const int n = op.n;
  const std::size_t count = std::size_t{1} << n;
  std::vector<int> pi(static_cast<std::size_t>(n));
  std::vector<Bitmask> f(count);
  for (Bitmask c = 0; c < count; ++c) {
    if (!(entry(op, 0, 0) == entry(op, c, c))) continue;
    std::iota(pi.begin(), pi.end(), 0);
    do {
      auto map = [&](Bitmask x) {
        Bitmask y = 0;
        for (int q = 0; q < n; ++q) {
          if (bit(x, q)) y |= Bitmask{1} << pi[static_cast<std::size_t>(q)];
        }
        return y ^ c;
      };
      // Row 0 first: rejects almost every candidate.
      const auto& row0 = op.rows[0];
      const auto& image0 = op.rows[idx(c)];
      bool ok = row0.size() == image0.size();
      for (auto it = row0.begin(); ok && it != row0.end(); ++it) {
        auto jt = image0.find(map(it->first));
        ok = jt != image0.end() && jt->second == it->second;
      }
      if (!ok) continue;
      for (Bitmask x = 0; x < count; ++x) f[idx(x)] = map(x);
      if (preserves(op, f)) visit(f);
    } while (std::next_permutation(pi.begin(), pi.end()));
  }
}

}  // namespace

DenseOperator dense_hamiltonian(const Hamiltonian& h, int cap) {
  if (h.n > cap) {
    throw CapExceeded("dense matrix requested for n = " + std::to_string(h.n) +
                      " above the cap of " + std::to_string(cap));
  }
  DenseOperator op;
  op.n = h.n;
  const std::size_t dim = std::size_t{1} << h.n;
  op.rows.assign(dim, {});
  struct Part {
    PauliType type;
    const CoefficientMap* coefficients;
    int sign;
  };
  for (const Part& part : {Part{PauliType::X, &h.alpha, -1}, Part{PauliType::Y, &h.beta, -1},
                           Part{PauliType::Z, &h.kappa, 1}}) {
    for (const auto& [support, c] : *part.coefficients) {
      for (Bitmask x = 0; x < dim; ++x) {
        PauliImage img = apply_word(part.type, support, x, h.n);
        if (img.i_power % 2 != 0) {
          throw std::invalid_argument("Pauli word " + std::string(1, pauli_char(part.type)) +
                                      " " + format_bitmask(support, h.n) +
                                      " has imaginary matrix elements");
        }
        Rational value = c * Rational(img.i_power == 0 ? part.sign : -part.sign);
        op.rows[idx(img.target)][x] += value;
      }
    }
  }
  op.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                    static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x) {
    std::erase_if(op.rows[x], [](const auto& kv) { return kv.second.is_zero(); });
    for (const auto& [y, v] : op.rows[x]) {
      op.matrix(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = v.to_double();
    }
  }
  return op;
}

Eigen::MatrixXd restrict_to(const DenseOperator& op, const std::vector<Bitmask>& basis) {
  const auto m = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      out(i, j) = op.matrix(static_cast<Eigen::Index>(basis[static_cast<std::size_t>(i)]),
                            static_cast<Eigen::Index>(basis[static_cast<std::size_t>(j)]));
    }
  }
  return out;
}

ExactGround exact_ground(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("dense eigensolver failed");
  }
  ExactGround g;
  g.energy = solver.eigenvalues()(0);
  g.excited = m.rows() > 1 ? solver.eigenvalues()(1) : g.energy;
  g.gap = g.excited - g.energy;
  g.vector = solver.eigenvectors().col(0);
  if (g.vector.sum() < 0.0) g.vector = -g.vector;
  g.residual = (m * g.vector - g.energy * g.vector).cwiseAbs().maxCoeff();
  return g;
}

ClassPartition brute_force_classes(const Hamiltonian& h, ClassMode mode) {
  const int cap = mode == ClassMode::Full ? 3 : 8;
  if (h.n > cap) {
    throw CapExceeded("automorphism search is limited to n <= " + std::to_string(cap));
  }
  DenseOperator op = dense_hamiltonian(h, cap);
  const std::size_t count = std::size_t{1} << h.n;
  UnionFind orbits(count);
  if (mode == ClassMode::Restricted) {
    for_each_signed_permutation_automorphism(op, [&](const std::vector<Bitmask>& f) {
      for (std::size_t x = 0; x < count; ++x) orbits.unite(x, idx(f[x]));
    });
    return partition_from(orbits, count);
  }

  // Backtracking over bijections f with f(x) fixed for x < depth.
  std::vector<Bitmask> f(count);
  std::vector<bool> used(count, false);
  auto consistent = [&](std::size_t x) {
    if (!(entry(op, x, x) == entry(op, f[x], f[x]))) return false;
    for (std::size_t y = 0; y < x; ++y) {
      if (!(entry(op, x, y) == entry(op, f[x], f[y]))) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t x) -> void {
    if (x == count) {
      for (std::size_t v = 0; v < count; ++v) orbits.unite(v, idx(f[v]));
      return;
    }
    for (Bitmask image = 0; image < count; ++image) {
      if (used[idx(image)]) continue;
      f[x] = image;
      if (!consistent(x)) continue;
      used[idx(image)] = true;
      self(self, x + 1);
      used[idx(image)] = false;
    }
  };
  search(search, 0);
  return partition_from(orbits, count);
}

std::size_t count_signed_permutation_automorphisms(const Hamiltonian& h) {
  if (h.n > 8) throw CapExceeded("automorphism search is limited to n <= 8");
  DenseOperator op = dense_hamiltonian(h, 8);
  std::size_t total = 0;
  for_each_signed_permutation_automorphism(op, [&](const auto&) { ++total; });
  return total;
}

ClassPartition certificate_classes(const Hamiltonian& h) {
  RepresentativeFinder finder(h);
  const std::size_t count = std::size_t{1} << h.n;
  std::map<std::size_t, std::vector<Bitmask>> blocks;
  for (Bitmask x = 0; x < count; ++x) {
    std::optional<std::size_t> rep = finder.lookup(x);
    blocks[rep ? *rep : finder.add(x)].push_back(x);
  }
  std::vector<std::vector<Bitmask>> out;
  for (auto& [rep, members] : blocks) out.push_back(std::move(members));
  return normalize(std::move(out));
}

EffectiveDiagnostics verify_effective(const Hamiltonian& h, const ComponentResult& result,
                                      RepresentativeFinder& finder, int cap) {
  if (h.n > cap) {
    throw CapExceeded("verification is limited to n <= " + std::to_string(cap));
  }
  DenseOperator op = dense_hamiltonian(h, cap);
  Components components(h);
  std::vector<Bitmask> basis;
  for (Bitmask x = 0; x < (Bitmask{1} << h.n); ++x) {
    if (components.key(x) == result.key) basis.push_back(x);
  }
  ExactGround exact = exact_ground(restrict_to(op, basis));

  EffectiveDiagnostics d;
  d.component_vertices = basis.size();
  d.energy_error = std::abs(result.ground.energy - exact.energy);
  const std::size_t m = result.graph.reps.size();
  std::vector<double> mass(m, 0.0), lo(m, 2.0), hi(m, -2.0);
  std::vector<std::int64_t> counted(m, 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::optional<std::size_t> rep = finder.lookup(basis[i]);
    if (!rep || *rep >= m) {
      ++d.size_mismatches;
      continue;
    }
    double a = exact.vector(static_cast<Eigen::Index>(i));
    mass[*rep] += a * a;
    lo[*rep] = std::min(lo[*rep], a);
    hi[*rep] = std::max(hi[*rep], a);
    ++counted[*rep];
  }
  for (std::size_t j = 0; j < m; ++j) {
    d.total_variation += 0.5 * std::abs(mass[j] - result.probabilities[j]);
    if (counted[j] > 0) d.amplitude_spread = std::max(d.amplitude_spread, hi[j] - lo[j]);
    if (counted[j] != result.graph.class_sizes[j]) ++d.size_mismatches;
  }
  return d;
}

double cheeger_ratio(const DenseOperator& op, const Eigen::VectorXd& phi,
                     const std::vector<bool>& in_set) {
  const std::size_t count = op.rows.size();
  if (in_set.size() != count) throw std::invalid_argument("set size mismatch");
  std::size_t members = static_cast<std::size_t>(std::count(in_set.begin(), in_set.end(), true));
  if (members == 0 || members == count) {
    throw std::invalid_argument("the set must be nonempty and proper");
  }
  long double boundary = 0.0L, inside = 0.0L, outside = 0.0L;
  for (std::size_t u = 0; u < count; ++u) {
    long double pu = phi(static_cast<Eigen::Index>(u));
    (in_set[u] ? inside : outside) += pu * pu;
    if (!in_set[u]) continue;
    for (const auto& [v, value] : op.rows[u]) {
      if (in_set[idx(v)]) continue;
      boundary += -static_cast<long double>(value.to_double()) * pu *
                  static_cast<long double>(phi(static_cast<Eigen::Index>(v)));
    }
  }
  return static_cast<double>(boundary / std::min(inside, outside));
}

PerturbationReport perturbation_bound(const Hamiltonian& h, const Hamiltonian& delta,
                                      int cap) {
  if (h.n != delta.n) throw std::invalid_argument("register sizes differ");
  DenseOperator op = dense_hamiltonian(h, cap);
  DenseOperator dop = dense_hamiltonian(delta, cap);
  const Eigen::MatrixXd& hm = op.matrix;
  const Eigen::MatrixXd& dm = dop.matrix;
  Eigen::MatrixXd perturbed = hm + dm;

  ExactGround g = exact_ground(hm);
  ExactGround gd = exact_ground(perturbed);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> delta_spectrum(dm, Eigen::EigenvaluesOnly);

  PerturbationReport r;
  r.gap = g.gap;
  r.expectation = g.vector.dot(dm * g.vector);
  r.delta_norm = delta_spectrum.eigenvalues().cwiseAbs().maxCoeff();
  r.delta_frobenius = dm.norm();
  r.h_frobenius = hm.norm();
  double overlap = g.vector.dot(gd.vector);
  r.exact_fidelity = overlap * overlap;
  r.sin_angle = (gd.vector - overlap * g.vector).norm();
  r.applicable = r.gap > r.expectation;
  if (r.applicable) {
    r.tan2 = std::abs(r.expectation) / (r.gap - r.expectation);
    r.fidelity_bound = 1.0 - std::numbers::pi * std::numbers::pi / 4.0 * r.tan2 * r.tan2;
  }
  Eigen::VectorXd leak = dm * g.vector;
  leak -= gd.vector.dot(leak) * gd.vector;
  double denominator = g.excited - gd.energy;
  r.projector_bound_applicable = denominator > 0.0;
  if (r.projector_bound_applicable) {
    r.projector_bound = std::numbers::pi / 2.0 * leak.norm() / denominator;
  }
  return r;
}

Hamiltonian relative_perturbation(const Hamiltonian& h, double delta, Rng& rng) {
  constexpr std::int64_t kDenominator = std::int64_t{1} << 40;
  Hamiltonian out;
  out.n = h.n;
  for (PauliType t : {PauliType::X, PauliType::Y, PauliType::Z}) {
    for (const auto& [b, c] : h.terms(t)) {
      double value = delta * (2.0 * rng.uniform() - 1.0) * std::abs(c.to_double());
      // Truncation toward zero keeps |value| within the bound.
      auto num = static_cast<std::int64_t>(std::trunc(value * static_cast<double>(kDenominator)));
      if (num != 0) out.terms(t)[b] = Rational(num, kDenominator);
    }
  }
  return out;
}

double frobenius_norm(const Hamiltonian& h) {
  double sum = 0.0;
  for (PauliType t : {PauliType::X, PauliType::Y, PauliType::Z}) {
    for (const auto& [b, c] : h.terms(t)) sum += c.to_double() * c.to_double();
  }
  return std::sqrt(std::ldexp(sum, h.n));
}

GiReduction gi_reduction(const SimpleGraph& s, const SimpleGraph& t) {
  GiReduction out;
  out.h.n = s.vertices + t.vertices;
  if (out.h.n < 1 || out.h.n > kMaxQubits) {
    throw std::invalid_argument("graph sizes out of range");
  }
  auto add = [&](const SimpleGraph& g, int offset) {
    for (auto [i, j] : g.edges) {
      Bitmask b = (Bitmask{1} << (i + offset)) | (Bitmask{1} << (j + offset));
      out.h.kappa[b] = 1;
    }
  };
  add(s, 0);
  add(t, s.vertices);
  out.first = full_mask(s.vertices);
  out.second = full_mask(out.h.n) & ~out.first;
  return out;
}

bool naive_isomorphic(const SimpleGraph& s, const SimpleGraph& t) {
  if (s.vertices != t.vertices || s.edges.size() != t.edges.size()) return false;
  if (s.vertices > 9) throw CapExceeded("naive isomorphism is limited to 9 vertices");
  const auto n = static_cast<std::size_t>(s.vertices);
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [i, j] : t.edges) {
    adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
  }
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (auto [i, j] : s.edges) {
      if (!adj[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])]
              [static_cast<std::size_t>(p[static_cast<std::size_t>(j)])]) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

SimpleGraph random_graph(Rng& rng, int vertices, double edge_probability) {
  SimpleGraph g;
  g.vertices = vertices;
  for (int i = 0; i < vertices; ++i) {
    for (int j = i + 1; j < vertices; ++j) {
      if (rng.uniform() < edge_probability) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

Hamiltonian random_stoquastic(Rng& rng, const RandomOptions& options) {
  const int g = options.granularity;
  Hamiltonian h;
  h.n = options.n_min +
        static_cast<int>(rng.below(static_cast<std::uint64_t>(options.n_max - options.n_min + 1)));
  const int k = std::min(options.k_max, h.n);

  auto random_support = [&](int weight) {
    std::vector<int> qubits(static_cast<std::size_t>(h.n));
    std::iota(qubits.begin(), qubits.end(), 0);
    Bitmask b = 0;
    for (int i = 0; i < weight; ++i) {
      auto j = static_cast<std::size_t>(i) +
               rng.below(static_cast<std::uint64_t>(h.n - i));
      std::swap(qubits[static_cast<std::size_t>(i)], qubits[j]);
      b |= Bitmask{1} << qubits[static_cast<std::size_t>(i)];
    }
    return b;
  };
  auto positive = [&](int steps) {
    return Rational(1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(steps))), g);
  };
  auto sign = [&]() { return rng.below(2) ? Rational(1) : Rational(-1); };

  const int terms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(options.max_terms)));
  for (int t = 0; t < terms; ++t) {
    int kind = static_cast<int>(rng.below(options.allow_y && k >= 2 ? 3 : 2));
    if (kind == 0) {
      Bitmask b = random_support(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k))));
      if (!h.alpha.contains(b)) h.alpha[b] = positive(2 * g);
    } else if (kind == 1) {
      Bitmask b = random_support(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k))));
      if (!h.kappa.contains(b)) h.kappa[b] = positive(2 * g) * sign();
    } else {
      int weight = 2 * (1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k / 2))));
      Bitmask b = random_support(weight);
      if (h.beta.contains(b)) continue;
      if (!h.alpha.contains(b)) h.alpha[b] = positive(2 * g);
      const Rational& a = h.alpha[b];
      std::int64_t steps = (a * Rational(g)).num();
      h.beta[b] = Rational(1 + static_cast<std::int64_t>(
                                   rng.below(static_cast<std::uint64_t>(steps))), g) * sign();
    }
  }

  if (options.connected) {
    auto spanning = [&]() {
      std::vector<Bitmask> gens;
      for (const auto& [b, a] : h.alpha) {
        auto it = h.beta.find(b);
        if (it == h.beta.end() || !(it->second.abs() == a)) gens.push_back(b);
      }
      return gf2_basis(gens);
    };
    for (std::vector<Bitmask> basis = spanning(); static_cast<int>(basis.size()) < h.n;
         basis = spanning()) {
      std::vector<int> missing;
      for (int q = 0; q < h.n; ++q) {
        Bitmask e = Bitmask{1} << q;
        if (gf2_reduce(e, basis) != 0) missing.push_back(q);
      }
      int q = missing[rng.below(missing.size())];
      Bitmask e = Bitmask{1} << q;
      if (h.alpha.contains(e)) {
        // Cannot happen: a single-qubit generator never cancels.
        throw std::logic_error("single-qubit generator outside the span");
      }
      h.alpha[e] = positive(2 * g);
    }
  }
  return h;
}

}  // namespace stoqsym::oracle
