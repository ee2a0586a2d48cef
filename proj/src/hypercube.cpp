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

#include "stoqsym/hypercube.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace stoqsym {

HypercubeGraph::HypercubeGraph(const Hamiltonian& h) : h_(&h) {
  for (const auto& [b, a] : h.alpha) {
    auto it = h.beta.find(b);
    terms_.push_back({b, a, it == h.beta.end() ? Rational(0) : it->second});
    generators_.push_back(b);
  }
  potential_.assign(h.kappa.begin(), h.kappa.end());
}

Rational HypercubeGraph::edge_weight(Bitmask b_prime, Bitmask b) const {
  for (const Generator& g : terms_) {
    if (g.support != b) continue;
    if (g.beta.is_zero()) return g.alpha;
    return y_phase(b, b_prime) > 0 ? g.alpha + g.beta : g.alpha - g.beta;
  }
  return 0;
}

Rational HypercubeGraph::boundary_weight(Bitmask b_prime) const {
  Rational total = 0;
  for (const auto& [b, kappa] : potential_) {
    if (dot(b, b_prime) & 1) {
      total -= kappa;
    } else {
      total += kappa;
    }
  }
  return total;
}

std::vector<WeightedNeighbor> HypercubeGraph::neighbors(Bitmask u) const {
  std::vector<WeightedNeighbor> out;
  out.reserve(terms_.size());
  for (const Generator& g : terms_) {
    Rational w = g.beta.is_zero()
                     ? g.alpha
                     : (y_phase(g.support, u) > 0 ? g.alpha + g.beta
                                                  : g.alpha - g.beta);
    if (!w.is_zero()) out.push_back({u ^ g.support, w});
  }
  return out;
}

Rational HypercubeGraph::weight(Bitmask u, Bitmask v) const {
  if (u == v) return 0;
  return edge_weight(u, u ^ v);
}

Rational edge_weight(const Hamiltonian& h, Bitmask b_prime, Bitmask b) {
  return HypercubeGraph(h).edge_weight(b_prime, b);
}

Rational boundary_weight(const Hamiltonian& h, Bitmask b_prime) {
  return HypercubeGraph(h).boundary_weight(b_prime);
}

std::vector<WeightedNeighbor> neighbors(const Hamiltonian& h, Bitmask u) {
  return HypercubeGraph(h).neighbors(u);
}

Components::Components(const Hamiltonian& h, std::size_t bfs_cap)
    : graph_(h), basis_(gf2_basis(edge_generators(h))), bfs_cap_(bfs_cap) {
  for (const auto& [b, beta] : h.beta) {
    auto it = h.alpha.find(b);
    if (it != h.alpha.end() && it->second == beta.abs()) cosets_ = false;
  }
}

const std::vector<Bitmask>& Components::explore(Bitmask u) {
  for (auto& [key, members] : explored_) {
    if (std::binary_search(members.begin(), members.end(), u)) return members;
  }
  std::unordered_set<Bitmask> seen{u};
  std::deque<Bitmask> frontier{u};
  while (!frontier.empty()) {
    Bitmask x = frontier.front();
    frontier.pop_front();
    for (const WeightedNeighbor& nb : graph_.neighbors(x)) {
      if (!seen.insert(nb.vertex).second) continue;
      if (seen.size() > bfs_cap_) {
        throw std::length_error("component exceeds the search cap of " +
                                std::to_string(bfs_cap_) + " vertices");
      }
      frontier.push_back(nb.vertex);
    }
  }
  std::vector<Bitmask> members(seen.begin(), seen.end());
  std::sort(members.begin(), members.end());
  Bitmask key = members.front();
  return explored_.emplace(key, std::move(members)).first->second;
}

Bitmask Components::key(Bitmask u) {
  if (cosets_) return gf2_reduce(u, basis_);
  return explore(u).front();
}

std::int64_t Components::size(Bitmask u) {
  if (cosets_) return std::int64_t{1} << basis_.size();
  return static_cast<std::int64_t>(explore(u).size());
}

std::string export_gamma_dot(const Hamiltonian& h) {
  if (h.n > 5) {
    throw std::length_error("explicit graph export is limited to n <= 5");
  }
  HypercubeGraph g(h);
  std::ostringstream out;
  out << "graph gamma {\n";
  out << "  node [shape=circle];\n";
  const Bitmask count = Bitmask{1} << h.n;
  for (Bitmask u = 0; u < count; ++u) {
    out << "  \"X" << format_bitmask(u, h.n) << "\";\n";
  }
  for (Bitmask u = 0; u < count; ++u) {
    for (const WeightedNeighbor& nb : g.neighbors(u)) {
      if (nb.vertex < u) continue;
      out << "  \"X" << format_bitmask(u, h.n) << "\" -- \"X"
          << format_bitmask(nb.vertex, h.n) << "\" [label=\""
          << nb.weight.to_string() << "\"];\n";
    }
  }
  for (Bitmask u = 0; u < count; ++u) {
    Rational w = g.boundary_weight(u);
    if (w.is_zero()) continue;
    std::string stub = "inf_" + format_bitmask(u, h.n);
    out << "  \"" << stub << "\" [shape=point];\n";
    out << "  \"X" << format_bitmask(u, h.n) << "\" -- \"" << stub
        << "\" [label=\"" << w.to_string() << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace stoqsym
