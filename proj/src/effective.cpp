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

#include "stoqsym/effective.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_set>

#include <Eigen/Sparse>

namespace stoqsym {

namespace {

inline std::size_t at(std::size_t i) { return i; }

std::vector<int> assignment_literals(Bitmask u, int n) {
  std::vector<int> literals;
  literals.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    literals.push_back(ColoredDigraph::literal_index(i, bit(u, i)));
  }
  return literals;
}

// Runs fn(i) for i in [0, count) on up to `threads` threads.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
  std::size_t workers = std::min<std::size_t>(
      count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

// ---------------------------------------------------------------------------
// RepresentativeFinder

RepresentativeFinder::RepresentativeFinder(const Hamiltonian& h)
    : h_(&h), shared_(build_shared(h)), compact_(gi::CompactGraph::from(shared_)) {}

gi::Certificate RepresentativeFinder::certificate(Bitmask u) const {
  gi::CompactGraph g = compact_.with_vertex(
      VertexColor{VertexKind::Assignment, std::nullopt},
      assignment_literals(u, h_->n));
  return gi::canonicalize(g).certificate;
}

std::optional<std::size_t> RepresentativeFinder::lookup(Bitmask u) {
  auto it = memo_.find(u);
  if (it == memo_.end()) it = memo_.emplace(u, certificate(u)).first;
  auto found = by_certificate_.find(it->second);
  if (found == by_certificate_.end()) return std::nullopt;
  return found->second;
}

std::optional<std::size_t> RepresentativeFinder::lookup(
    Bitmask u, const gi::Certificate& cert) {
  auto it = memo_.find(u);
  if (it == memo_.end()) it = memo_.emplace(u, cert).first;
  auto found = by_certificate_.find(it->second);
  if (found == by_certificate_.end()) return std::nullopt;
  return found->second;
}

std::size_t RepresentativeFinder::add(Bitmask u) {
  auto it = memo_.find(u);
  if (it == memo_.end()) it = memo_.emplace(u, certificate(u)).first;
  auto [pos, inserted] = by_certificate_.emplace(it->second, reps_.size());
  if (!inserted) return pos->second;
  reps_.push_back(u);
  return reps_.size() - 1;
}

bool RepresentativeFinder::known(Bitmask u) const { return memo_.contains(u); }

const std::vector<LiteralPermutation>& RepresentativeFinder::literal_generators() {
  if (!literal_generators_) {
    const std::size_t literals = 2 * static_cast<std::size_t>(h_->n);
    std::set<LiteralPermutation> unique;
    for (const gi::Permutation& gamma : gi::canonicalize(compact_).generators) {
      LiteralPermutation p(gamma.begin(), gamma.begin() + static_cast<long>(literals));
      bool identity = true;
      for (std::size_t l = 0; l < literals; ++l) {
        identity = identity && p[l] == static_cast<int>(l);
      }
      if (!identity) unique.insert(std::move(p));
    }
    literal_generators_.emplace(unique.begin(), unique.end());
  }
  return *literal_generators_;
}

std::optional<Bitmask> find_representative(Bitmask u,
                                           const std::vector<Bitmask>& reps,
                                           const ColoredDigraph& shared) {
  ColoredDigraph gu = attach_assignment(shared, u);
  for (Bitmask v : reps) {
    if (gi::isomorphic(gu, attach_assignment(shared, v))) return v;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Effective vertices and graph

EffectiveVertices find_effective_vertices(RepresentativeFinder& finder,
                                          Bitmask seed, int threads) {
  if (!finder.reps().empty()) {
    throw std::invalid_argument("find_effective_vertices needs a finder with no representatives");
  }
  const Hamiltonian& h = finder.hamiltonian();
  HypercubeGraph gamma(h);
  const std::size_t queried_before = finder.queried();

  auto expand = [&](Bitmask u) {
    std::vector<Bitmask> next;
    for (const WeightedNeighbor& nb : gamma.neighbors(u)) next.push_back(nb.vertex);
    if (threads > 1) {
      std::vector<Bitmask> fresh;
      for (Bitmask v : next) {
        if (!finder.known(v) &&
            std::find(fresh.begin(), fresh.end(), v) == fresh.end()) {
          fresh.push_back(v);
        }
      }
      if (fresh.size() > 1) {
        std::vector<gi::Certificate> certs(fresh.size());
        parallel_for(fresh.size(), threads,
                     [&](std::size_t i) { certs[i] = finder.certificate(fresh[i]); });
        for (std::size_t i = 0; i < fresh.size(); ++i) finder.lookup(fresh[i], certs[i]);
      }
    }
    return next;
  };

  struct Frame {
    std::vector<Bitmask> next;
    std::size_t cursor = 0;
  };
  if (!finder.lookup(seed)) finder.add(seed);
  std::vector<Frame> stack;
  stack.push_back({expand(seed)});
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.cursor == top.next.size()) {
      stack.pop_back();
      continue;
    }
    Bitmask v = top.next[top.cursor++];
    if (finder.lookup(v)) continue;
    finder.add(v);
    stack.push_back({expand(v)});
  }

  EffectiveVertices out;
  out.seed = seed;
  out.reps = finder.reps();
  out.visited_count = finder.queried() - queried_before;
  return out;
}

EffectiveVertices find_effective_vertices(const Hamiltonian& h,
                                          std::optional<Bitmask> seed, Rng& rng) {
  RepresentativeFinder finder(h);
  return find_effective_vertices(finder, seed ? *seed : rng.bits(h.n));
}

EffectiveGraph find_effective_graph(RepresentativeFinder& finder,
                                    Components& components,
                                    const EffectiveVertices& vertices) {
  const Hamiltonian& h = finder.hamiltonian();
  HypercubeGraph gamma(h);
  EffectiveGraph eg;
  eg.n = h.n;
  eg.seed = vertices.seed;
  eg.reps = vertices.reps;
  const std::size_t m = eg.reps.size();
  eg.omega.assign(m, std::vector<Rational>(m));
  eg.boundary.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    Bitmask u = eg.reps[i];
    eg.boundary[i] = gamma.boundary_weight(u);
    for (const WeightedNeighbor& nb : gamma.neighbors(u)) {
      std::optional<std::size_t> j = finder.lookup(nb.vertex);
      if (!j || *j >= m) {
        throw InconsistentEffectiveGraph(
            "neighbour " + format_bitmask(nb.vertex, h.n) + " of " +
            format_bitmask(u, h.n) + " has no representative");
      }
      eg.omega[i][*j] += nb.weight;
    }
  }
  eg.visited_count = vertices.visited_count;
  eg.component_size = components.size(vertices.seed);
  eg.class_sizes = class_sizes(eg);
  return eg;
}

EffectiveGraph find_effective_graph(const Hamiltonian& h,
                                    std::optional<Bitmask> seed, Rng& rng) {
  RepresentativeFinder finder(h);
  Components components(h);
  EffectiveVertices v = find_effective_vertices(finder, seed ? *seed : rng.bits(h.n));
  return find_effective_graph(finder, components, v);
}

std::vector<std::int64_t> class_sizes(const EffectiveGraph& eg) {
  const std::size_t m = eg.reps.size();
  if (m == 0) return {};
  try {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (eg.omega[i][j].is_zero() != eg.omega[j][i].is_zero()) {
          throw InconsistentEffectiveGraph(
              "one-sided weight between classes " + std::to_string(i) + " and " +
              std::to_string(j));
        }
      }
    }
    std::vector<std::optional<Rational>> relative(m);
    relative[0] = Rational(1);
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < m; ++v) {
        if (v == u || relative[v] || eg.omega[u][v].is_zero()) continue;
        relative[v] = *relative[u] * eg.omega[u][v] / eg.omega[v][u];
        queue.push_back(v);
      }
    }
    Rational total = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!relative[i]) {
        throw InconsistentEffectiveGraph("representative " + std::to_string(i) +
                                         " is not connected to the seed");
      }
      total += *relative[i];
    }
    std::vector<std::int64_t> sizes(m);
    for (std::size_t i = 0; i < m; ++i) {
      Rational s = *relative[i] * Rational(eg.component_size) / total;
      if (!s.is_integer() || s.sign() <= 0) {
        throw InconsistentEffectiveGraph("class size " + s.to_string() +
                                         " is not a positive integer");
      }
      sizes[i] = s.num();
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (Rational(sizes[i]) * eg.omega[i][j] != Rational(sizes[j]) * eg.omega[j][i]) {
          throw InconsistentEffectiveGraph("detailed balance fails between classes " +
                                           std::to_string(i) + " and " +
                                           std::to_string(j));
        }
      }
    }
    return sizes;
  } catch (const RationalOverflow& e) {
    throw InconsistentEffectiveGraph(std::string("class size arithmetic: ") + e.what());
  }
}

std::vector<std::vector<Rational>> effective_hamiltonian(const EffectiveGraph& eg) {
  const std::size_t m = eg.reps.size();
  std::vector<std::vector<Rational>> out(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out[i][j] = -eg.omega[i][j];
    out[i][i] += eg.boundary[i];
  }
  return out;
}

Eigen::MatrixXd to_dense(const std::vector<std::vector<Rational>>& m) {
  const auto rows = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < rows; ++j) {
      out(i, j) = m[at(static_cast<std::size_t>(i))][at(static_cast<std::size_t>(j))].to_double();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Power iteration

namespace {

constexpr Eigen::Index kSquaringLimit = 128;

struct PowerResult {
  double mu = 0.0;
  Eigen::VectorXd vector;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Dominant eigenpair of the symmetric matrix B, whose spectrum is
// nonnegative. With `deflate` set, iterates on B restricted to the orthogonal
// complement of that unit vector. Small matrices are first raised to a large
// power by repeated squaring. `residual` maps (x, Bx, mu) to the quantity
// compared against `target`.
class PowerIteration {
 public:
  PowerIteration(const Eigen::MatrixXd& b, const Eigen::VectorXd* deflate)
      : dense_(b), deflate_(deflate) {
    if (b.rows() > kSquaringLimit) sparse_ = b.sparseView();
  }

  void prepare_squaring(std::size_t max_iter) {
    if (dense_.rows() > kSquaringLimit) return;
    power_ = dense_;
    if (deflate_) power_ -= (deflate_->dot(dense_ * *deflate_)) * *deflate_ * deflate_->transpose();
    squarings_ = 0;
    double scale = power_.cwiseAbs().maxCoeff();
    if (scale == 0.0) return;
    power_ /= scale;
    while ((std::size_t{2} << squarings_) <= max_iter && squarings_ < 40) {
      power_ = power_ * power_;
      double s = power_.cwiseAbs().maxCoeff();
      if (s == 0.0 || !std::isfinite(s)) break;
      power_ /= s;
      ++squarings_;
    }
    squared_ = true;
  }

  PowerResult run(Eigen::VectorXd x, std::size_t max_iter, double target,
                  const std::function<double(const Eigen::VectorXd&,
                                             const Eigen::VectorXd&, double)>& residual) {
    PowerResult r;
    project(x);
    if (squared_) {
      Eigen::VectorXd y = power_ * x;
      project(y);
      if (y.norm() > 0.0) x = y;
      r.iterations = std::size_t{1} << squarings_;
    }
    x.normalize();
    const std::size_t check_every = dense_.rows() > kSquaringLimit ? 8 : 1;
    Eigen::VectorXd y;
    while (true) {
      y = apply(x);
      r.mu = x.dot(y);
      if (r.iterations % check_every == 0 || r.iterations >= max_iter) {
        r.residual = residual(x, y, r.mu);
        if (r.residual <= target) {
          r.converged = true;
          break;
        }
        if (r.iterations >= max_iter) break;
      }
      double norm = y.norm();
      if (norm == 0.0) {
        r.residual = residual(x, y, r.mu);
        r.converged = r.residual <= target;
        break;
      }
      x = y / norm;
      ++r.iterations;
    }
    r.vector = x;
    return r;
  }

 private:
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = dense_.rows() > kSquaringLimit ? Eigen::VectorXd(sparse_ * x)
                                                       : Eigen::VectorXd(dense_ * x);
    project(y);
    return y;
  }
  void project(Eigen::VectorXd& y) const {
    if (deflate_) y -= deflate_->dot(y) * *deflate_;
  }

  const Eigen::MatrixXd& dense_;
  Eigen::SparseMatrix<double> sparse_;
  const Eigen::VectorXd* deflate_;
  Eigen::MatrixXd power_;
  int squarings_ = 0;
  bool squared_ = false;
};

Eigen::VectorXd random_positive(Eigen::Index m, Rng& rng) {
  Eigen::VectorXd x(m);
  for (Eigen::Index i = 0; i < m; ++i) x(i) = 0.5 + rng.uniform();
  return x;
}

}  // namespace

GroundSolution ground_state(const Eigen::MatrixXd& h_eff,
                            const std::vector<std::int64_t>& sizes,
                            const SolverOptions& options) {
  const Eigen::Index m = h_eff.rows();
  if (m == 0 || h_eff.cols() != m || static_cast<Eigen::Index>(sizes.size()) != m) {
    throw std::invalid_argument("ground_state: shape mismatch");
  }
  GroundSolution gs;
  Eigen::VectorXd sqrt_d(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    sqrt_d(i) = std::sqrt(static_cast<double>(sizes[static_cast<std::size_t>(i)]));
  }
  if (m == 1) {
    gs.energy = h_eff(0, 0);
    gs.amplitudes = Eigen::VectorXd::Constant(1, 1.0 / sqrt_d(0));
    return gs;
  }

  double shift = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m; ++i) {
    double radius = h_eff.row(i).cwiseAbs().sum() - std::abs(h_eff(i, i));
    shift = std::max(shift, h_eff(i, i) + radius);
  }
  Eigen::MatrixXd sym = sqrt_d.asDiagonal() * h_eff * sqrt_d.cwiseInverse().asDiagonal();
  sym = 0.5 * (sym + sym.transpose()).eval();
  Eigen::MatrixXd b = -sym;
  b.diagonal().array() += shift;

  const double h_norm = h_eff.cwiseAbs().rowwise().sum().maxCoeff();
  const double target = options.tol * h_norm;
  // Residual of H' phi - lambda phi in the unsymmetrized frame, relative to
  // the largest amplitude.
  auto residual = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& bx, double mu) {
    Eigen::VectorXd phi = x.cwiseQuotient(sqrt_d);
    Eigen::VectorXd r = (bx - mu * x).cwiseQuotient(sqrt_d);
    double scale = phi.cwiseAbs().maxCoeff();
    return scale > 0.0 ? r.cwiseAbs().maxCoeff() / scale : 0.0;
  };

  Rng rng(options.seed);
  PowerIteration ground(b, nullptr);
  ground.prepare_squaring(options.max_iter);
  PowerResult first = ground.run(random_positive(m, rng), options.max_iter, target, residual);
  if (!first.converged) {
    throw NonConvergence("power iteration did not converge", first.residual,
                         first.iterations);
  }
  PowerResult second = ground.run(random_positive(m, rng), options.max_iter, target, residual);
  Eigen::VectorXd psi = first.vector;
  if (psi.sum() < 0.0) psi = -psi;
  Eigen::VectorXd psi2 = second.vector;
  if (psi2.sum() < 0.0) psi2 = -psi2;
  gs.degenerate = !second.converged || 1.0 - psi.dot(psi2) > 1e-6;

  gs.energy = shift - first.mu;
  gs.amplitudes = psi.cwiseQuotient(sqrt_d);
  gs.residual = first.residual;
  gs.iterations = first.iterations;

  if (options.excited) {
    PowerIteration excited(b, &psi);
    excited.prepare_squaring(options.max_iter);
    PowerResult e = excited.run(random_positive(m, rng), options.max_iter,
                                std::max(target, 1e-9 * std::max(1.0, h_norm)), residual);
    gs.excited_energy = shift - e.mu;
    gs.excited_converged = e.converged;
  }
  return gs;
}

std::vector<double> class_distribution(const GroundSolution& gs,
                                       const std::vector<std::int64_t>& sizes) {
  std::vector<double> p(sizes.size());
  double total = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    double a = gs.amplitudes(static_cast<Eigen::Index>(i));
    p[i] = static_cast<double>(sizes[i]) * a * a;
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

// ---------------------------------------------------------------------------
// Orbits and sampling

namespace {

// Literal set as (positive literals, negated literals) bit masks.
struct LiteralSet {
  Bitmask pos = 0;
  Bitmask neg = 0;
  friend bool operator==(const LiteralSet&, const LiteralSet&) = default;
};

struct LiteralSetHash {
  std::size_t operator()(const LiteralSet& s) const {
    return std::hash<Bitmask>{}(s.pos * 0x9e3779b97f4a7c15ULL ^ s.neg);
  }
};

LiteralSet assignment_set(Bitmask u, int n) { return {full_mask(n) & ~u, u}; }

LiteralSet apply(const LiteralPermutation& p, const LiteralSet& s, int n) {
  LiteralSet out;
  for (int i = 0; i < n; ++i) {
    for (int neg = 0; neg < 2; ++neg) {
      Bitmask mask = neg ? s.neg : s.pos;
      if (!bit(mask, i)) continue;
      int image = p[static_cast<std::size_t>(ColoredDigraph::literal_index(i, neg != 0))];
      Bitmask b = Bitmask{1} << (image / 2);
      if (image % 2) {
        out.neg |= b;
      } else {
        out.pos |= b;
      }
    }
  }
  return out;
}

bool valid_assignment(const LiteralSet& s, int n) {
  return (s.pos & s.neg) == 0 && (s.pos | s.neg) == full_mask(n);
}

std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed ^ (index + 0x9e3779b97f4a7c15ULL) * 0xd1b54a32d192ed03ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

OrbitResult orbit_members(Bitmask u, int n,
                          const std::vector<LiteralPermutation>& generators,
                          Components& components, std::size_t cap) {
  OrbitResult out;
  const Bitmask key = components.key(u);
  std::unordered_set<LiteralSet, LiteralSetHash> seen;
  std::deque<LiteralSet> frontier;
  LiteralSet start = assignment_set(u, n);
  seen.insert(start);
  frontier.push_back(start);
  while (!frontier.empty()) {
    LiteralSet s = frontier.front();
    frontier.pop_front();
    if (valid_assignment(s, n) && components.key(s.neg) == key) {
      out.members.push_back(s.neg);
    }
    for (const LiteralPermutation& g : generators) {
      LiteralSet t = apply(g, s, n);
      if (seen.contains(t)) continue;
      if (seen.size() >= cap) {
        out.complete = false;
        continue;
      }
      seen.insert(t);
      frontier.push_back(t);
    }
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

Bitmask orbit_walk(Bitmask u, int n,
                   const std::vector<LiteralPermutation>& generators,
                   Components& components, Rng& rng) {
  if (generators.empty()) return u;
  const Bitmask key = components.key(u);
  LiteralSet s = assignment_set(u, n);
  const std::size_t burn_in = 8 * generators.size() + 32;
  for (std::size_t step = 0; step < burn_in + 100000; ++step) {
    s = apply(generators[rng.below(generators.size())], s, n);
    if (step >= burn_in && valid_assignment(s, n) && components.key(s.neg) == key) {
      return s.neg;
    }
  }
  return u;
}

ComponentResult solve_component(RepresentativeFinder& finder,
                                Components& components, Bitmask seed,
                                const SolverOptions& options, int threads) {
  ComponentResult out;
  out.key = components.key(seed);
  EffectiveVertices vertices = find_effective_vertices(finder, seed, threads);
  out.graph = find_effective_graph(finder, components, vertices);
  out.ground = ground_state(to_dense(effective_hamiltonian(out.graph)),
                            out.graph.class_sizes, options);
  out.probabilities = class_distribution(out.ground, out.graph.class_sizes);
  return out;
}

SampleReport sample(const Hamiltonian& h, const SampleOptions& options) {
  SampleReport report;
  report.seed = options.seed;
  Components components(h);
  const int n = h.n;

  // Pass 1: component of every shot, pipelines in order of first appearance.
  std::map<Bitmask, std::size_t> index_of;
  std::vector<std::uint32_t> component_of(options.shots);
  std::vector<std::unique_ptr<RepresentativeFinder>> finders;
  auto ensure = [&](Bitmask s) {
    Bitmask key = components.key(s);
    auto [it, inserted] = index_of.emplace(key, report.components.size());
    if (inserted) {
      finders.push_back(std::make_unique<RepresentativeFinder>(h));
      report.components.push_back(
          solve_component(*finders.back(), components, s, options.solver, options.threads));
    }
    return it->second;
  };
  if (options.shots == 0) {
    Rng rng(shot_seed(options.seed, 0));
    ensure(rng.bits(n));
  }
  for (std::uint64_t i = 0; i < options.shots; ++i) {
    Rng rng(shot_seed(options.seed, i));
    component_of[i] = static_cast<std::uint32_t>(ensure(rng.bits(n)));
  }
  if (options.shots == 0) return report;

  for (std::size_t c = 0; c < report.components.size(); ++c) {
    ComponentResult& comp = report.components[c];
    const auto& gens = finders[c]->literal_generators();
    for (std::size_t r = 0; r < comp.graph.reps.size(); ++r) {
      OrbitResult orbit =
          orbit_members(comp.graph.reps[r], n, gens, components, options.orbit_cap);
      if (orbit.complete &&
          static_cast<std::int64_t>(orbit.members.size()) != comp.graph.class_sizes[r]) {
        throw InconsistentEffectiveGraph(
            "orbit of " + format_bitmask(comp.graph.reps[r], n) + " has " +
            std::to_string(orbit.members.size()) + " members, class size is " +
            std::to_string(comp.graph.class_sizes[r]));
      }
      if (!orbit.complete) report.approximate_members = true;
      comp.orbits.push_back(std::move(orbit));
    }
  }

  // Pass 2: class and member per shot.
  std::vector<std::vector<double>> cumulative;
  for (const ComponentResult& comp : report.components) {
    std::vector<double> c(comp.probabilities.size());
    std::partial_sum(comp.probabilities.begin(), comp.probabilities.end(), c.begin());
    cumulative.push_back(std::move(c));
  }
  report.shots.resize(options.shots);
  std::mutex walk_mutex;
  parallel_for(static_cast<std::size_t>(std::max(options.threads, 1)), options.threads,
               [&](std::size_t worker) {
    const std::size_t workers = static_cast<std::size_t>(std::max(options.threads, 1));
    for (std::uint64_t i = worker; i < options.shots; i += workers) {
      Rng rng(shot_seed(options.seed, i));
      rng.bits(n);
      const std::size_t c = component_of[i];
      const ComponentResult& comp = report.components[c];
      const std::vector<double>& cum = cumulative[c];
      double x = rng.uniform() * cum.back();
      std::size_t r = static_cast<std::size_t>(
          std::upper_bound(cum.begin(), cum.end(), x) - cum.begin());
      r = std::min(r, cum.size() - 1);
      const OrbitResult& orbit = comp.orbits[r];
      Bitmask member;
      if (orbit.complete) {
        member = orbit.members[rng.below(orbit.members.size())];
      } else {
        std::lock_guard<std::mutex> lock(walk_mutex);
        member = orbit_walk(comp.graph.reps[r], n, finders[c]->literal_generators(),
                            components, rng);
      }
      report.shots[i] = Shot{c, comp.graph.reps[r], member};
    }
  });
  return report;
}

}  // namespace stoqsym
