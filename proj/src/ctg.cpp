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

#include "stoqsym/ctg.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "stoqsym/hypercube.hpp"

namespace stoqsym {

const char* kind_name(VertexKind kind) {
  switch (kind) {
    case VertexKind::Literal:
      return "literal";
    case VertexKind::Assignment:
      return "assignment";
    case VertexKind::Generator:
      return "generator";
    case VertexKind::WeightGenerator:
      return "weight_generator";
    case VertexKind::WeightGeneratorCluster:
      return "weight_generator_cluster";
    case VertexKind::Clause:
      return "clause";
    case VertexKind::ClauseCluster:
      return "clause_cluster";
  }
  return "unknown";
}

std::string VertexColor::to_string() const {
  std::string s = kind_name(kind);
  if (value) s += ":" + value->to_string();
  return s;
}

std::strong_ordering operator<=>(const VertexColor& a, const VertexColor& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (a.value.has_value() != b.value.has_value()) {
    return a.value.has_value() ? std::strong_ordering::greater
                               : std::strong_ordering::less;
  }
  if (!a.value) return std::strong_ordering::equal;
  return *a.value <=> *b.value;
}

int ColoredDigraph::add_vertex(const CtgVertex& v) {
  auto key = std::make_pair(v.kind, v.label);
  if (auto it = index_.find(key); it != index_.end()) {
    if (!(vertices_[static_cast<std::size_t>(it->second)].color == v.color)) {
      throw std::logic_error("vertex re-added with a different color");
    }
    return it->second;
  }
  int idx = vertex_count();
  vertices_.push_back(v);
  index_.emplace(key, idx);
  return idx;
}

std::optional<int> ColoredDigraph::find(VertexKind kind,
                                        const VertexLabel& label) const {
  auto it = index_.find({kind, label});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void ColoredDigraph::add_arc(int from, int to) {
  if (from < 0 || to < 0 || from >= vertex_count() || to >= vertex_count()) {
    throw std::out_of_range("arc endpoint is not a vertex");
  }
  arcs_.emplace(from, to);
}

ColoredDigraph ColoredDigraph::without_vertex(int index) const {
  ColoredDigraph out(qubits_);
  for (int i = 0; i < vertex_count(); ++i) {
    if (i != index) out.add_vertex(vertex(i));
  }
  auto shift = [index](int i) { return i > index ? i - 1 : i; };
  for (auto [a, b] : arcs_) {
    if (a != index && b != index) out.arcs_.emplace(shift(a), shift(b));
  }
  return out;
}

bool ColoredDigraph::same_vertices(const ColoredDigraph& other) const {
  if (vertices_.size() != other.vertices_.size()) return false;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const CtgVertex& a = vertices_[i];
    const CtgVertex& b = other.vertices_[i];
    if (a.kind != b.kind || a.label != b.label || !(a.color == b.color)) {
      return false;
    }
  }
  return true;
}

namespace {

std::string literal_name(int qubit, bool negated) {
  return std::string(negated ? "-" : "") + "Z" + std::to_string(qubit);
}

std::string literal_set_name(Bitmask support, Bitmask pattern) {
  std::string s = "[";
  bool first = true;
  for (int i = 0; i < 64; ++i) {
    if (!bit(support, i)) continue;
    if (!first) s += ",";
    s += literal_name(i, bit(pattern, i));
    first = false;
  }
  return s + "]";
}

}  // namespace

std::string ColoredDigraph::vertex_name(int index) const {
  const CtgVertex& v = vertex(index);
  const int n = qubits_;
  switch (v.kind) {
    case VertexKind::Literal:
      return literal_name(v.label.qubit, v.label.negated);
    case VertexKind::Assignment:
      return "A(" + format_bitmask(v.label.pattern, n) + ")";
    case VertexKind::Generator:
      return "X_" + format_bitmask(v.label.support, n);
    case VertexKind::WeightGenerator:
      return "u_" + format_bitmask(v.label.support, n) +
             literal_set_name(v.label.support, v.label.pattern);
    case VertexKind::WeightGeneratorCluster:
      return "Y_" + format_bitmask(v.label.support, n);
    case VertexKind::Clause:
      return "c_" + format_bitmask(v.label.support, n) +
             literal_set_name(v.label.support, v.label.pattern);
    case VertexKind::ClauseCluster:
      return "Z_" + format_bitmask(v.label.support, n);
  }
  return "?";
}

namespace {

// All patterns p (subsets of `support`), in increasing numeric order.
std::vector<Bitmask> submasks(Bitmask support) {
  std::vector<Bitmask> out;
  Bitmask p = 0;
  do {
    out.push_back(p);
    p = (p - support) & support;
  } while (p != 0);
  return out;
}

Rational max_alpha(const Hamiltonian& h) {
  Rational m = 0;
  for (const auto& [b, a] : h.alpha) m = std::max(m, a);
  return m;
}

Rational max_abs_beta(const Hamiltonian& h) {
  Rational m = 0;
  for (const auto& [b, beta] : h.beta) m = std::max(m, beta.abs());
  return m;
}

}  // namespace

ColoredDigraph build_shared(const Hamiltonian& h) {
  ValidationReport report = validate_stoquastic(h);
  if (!report.ok) {
    throw std::invalid_argument("Hamiltonian is not a valid stoquastic model: " +
                                report.violations.front().message);
  }
  const int n = h.n;
  ColoredDigraph g(n);
  for (int i = 0; i < n; ++i) {
    for (bool neg : {false, true}) {
      VertexLabel label;
      label.qubit = i;
      label.negated = neg;
      g.add_vertex({VertexKind::Literal, label, {VertexKind::Literal, {}}});
    }
  }

  const Rational top_alpha = max_alpha(h);
  const Rational top_beta = max_abs_beta(h);

  for (const auto& [b, alpha] : h.alpha) {
    VertexLabel label;
    label.support = b;
    int x = g.add_vertex(
        {VertexKind::Generator, label, {VertexKind::Generator, alpha}});
    for (int i = 0; i < n; ++i) {
      if (!bit(b, i)) continue;
      g.add_edge(x, ColoredDigraph::literal_index(i, false));
      g.add_edge(x, ColoredDigraph::literal_index(i, true));
    }
  }

  for (const auto& [b, beta] : h.beta) {
    VertexLabel cluster_label;
    cluster_label.support = b;
    int y = g.add_vertex({VertexKind::WeightGeneratorCluster, cluster_label,
                          {VertexKind::WeightGeneratorCluster,
                           top_alpha + beta.abs()}});
    for (Bitmask p : submasks(b)) {
      if (y_phase(b, p) * beta.sign() >= 0) continue;
      VertexLabel label;
      label.support = b;
      label.pattern = p;
      int u = g.add_vertex({VertexKind::WeightGenerator, label,
                            {VertexKind::WeightGenerator, {}}});
      for (int i = 0; i < n; ++i) {
        if (!bit(b, i)) continue;
        int lit = ColoredDigraph::literal_index(i, bit(p, i));
        int neg = ColoredDigraph::literal_index(i, !bit(p, i));
        g.add_arc(lit, u);
        g.add_arc(u, neg);
      }
      g.add_edge(u, y);
    }
  }

  for (const auto& [b, kappa] : h.kappa) {
    VertexLabel cluster_label;
    cluster_label.support = b;
    int z = g.add_vertex(
        {VertexKind::ClauseCluster, cluster_label,
         {VertexKind::ClauseCluster, top_alpha + top_beta + kappa.abs()}});
    for (Bitmask p : submasks(b)) {
      int parity = (hamming_weight(p) & 1) ? -1 : 1;
      if (parity != kappa.sign()) continue;
      VertexLabel label;
      label.support = b;
      label.pattern = p;
      int c = g.add_vertex(
          {VertexKind::Clause, label, {VertexKind::Clause, {}}});
      for (int i = 0; i < n; ++i) {
        if (bit(b, i)) g.add_edge(c, ColoredDigraph::literal_index(i, bit(p, i)));
      }
      g.add_edge(c, z);
    }
  }
  return g;
}

ColoredDigraph attach_assignment(const ColoredDigraph& shared, Bitmask u) {
  ColoredDigraph g = shared;
  VertexLabel label;
  label.pattern = u;
  int a = g.add_vertex(
      {VertexKind::Assignment, label, {VertexKind::Assignment, {}}});
  for (int i = 0; i < shared.qubits(); ++i) {
    g.add_edge(a, ColoredDigraph::literal_index(i, bit(u, i)));
  }
  return g;
}

std::size_t expected_vertex_count(const Hamiltonian& h) {
  std::size_t count = 2 * static_cast<std::size_t>(h.n) + h.alpha.size();
  for (const auto* m : {&h.beta, &h.kappa}) {
    for (const auto& [b, c] : *m) {
      count += (std::size_t{1} << (hamming_weight(b) - 1)) + 1;
    }
  }
  return count;
}

namespace {

struct Adjacency {
  std::vector<std::vector<int>> out, in;
  explicit Adjacency(const ColoredDigraph& g)
      : out(static_cast<std::size_t>(g.vertex_count())),
        in(static_cast<std::size_t>(g.vertex_count())) {
    for (auto [a, b] : g.arcs()) {
      out[static_cast<std::size_t>(a)].push_back(b);
      in[static_cast<std::size_t>(b)].push_back(a);
    }
  }
  bool both(const ColoredDigraph& g, int a, int b) const {
    return g.has_arc(a, b) && g.has_arc(b, a);
  }
};

// Literal set of a weight generator or clause read off its arcs; returns
// (support, pattern).
std::pair<Bitmask, Bitmask> literal_set(const ColoredDigraph& g,
                                        const std::vector<int>& literal_nbrs,
                                        const std::string& who) {
  Bitmask support = 0, pattern = 0;
  for (int l : literal_nbrs) {
    const CtgVertex& lit = g.vertex(l);
    Bitmask q = Bitmask{1} << lit.label.qubit;
    if (support & q) {
      throw MalformedGadget(who + " touches both literals of qubit " +
                            std::to_string(lit.label.qubit));
    }
    support |= q;
    if (lit.label.negated) pattern |= q;
  }
  return {support, pattern};
}

}  // namespace

Hamiltonian reconstruct_hamiltonian(const ColoredDigraph& shared, int n) {
  if (shared.qubits() != n) {
    throw MalformedGadget("graph encodes " + std::to_string(shared.qubits()) +
                          " qubits, expected " + std::to_string(n));
  }
  for (int i = 0; i < 2 * n; ++i) {
    const CtgVertex& v = shared.vertex(i);
    if (v.kind != VertexKind::Literal || v.label.qubit != i / 2 ||
        v.label.negated != (i % 2 == 1)) {
      throw MalformedGadget("literal block is malformed");
    }
  }
  Adjacency adj(shared);
  Hamiltonian h;
  h.n = n;

  auto color_value = [&](int v) -> Rational {
    const auto& c = shared.vertex(v).color;
    if (!c.value) {
      throw MalformedGadget(shared.vertex_name(v) + " lacks a color value");
    }
    return *c.value;
  };

  // generators: alpha_b is the color
  for (int v = 0; v < shared.vertex_count(); ++v) {
    if (shared.vertex(v).kind != VertexKind::Generator) continue;
    Bitmask support = 0;
    for (int l : adj.out[static_cast<std::size_t>(v)]) {
      if (shared.vertex(l).kind != VertexKind::Literal || !adj.both(shared, v, l)) {
        throw MalformedGadget(shared.vertex_name(v) + " has a foreign arc");
      }
      support |= Bitmask{1} << shared.vertex(l).label.qubit;
    }
    for (int i = 0; i < n; ++i) {
      if (bit(support, i) &&
          !(shared.has_arc(v, ColoredDigraph::literal_index(i, false)) &&
            shared.has_arc(v, ColoredDigraph::literal_index(i, true)))) {
        throw MalformedGadget(shared.vertex_name(v) +
                              " does not join both literals of a qubit");
      }
    }
    if (support == 0) throw MalformedGadget("dangling generator vertex");
    Rational alpha = color_value(v);
    if (alpha.sign() <= 0) throw MalformedGadget("non-positive generator color");
    if (!h.alpha.emplace(support, alpha).second) {
      throw MalformedGadget("two generators on one support");
    }
  }
  Rational top_alpha = 0;
  for (const auto& [b, a] : h.alpha) top_alpha = std::max(top_alpha, a);

  auto cluster_members = [&](int cluster, VertexKind member_kind) {
    std::vector<int> members;
    for (int m : adj.out[static_cast<std::size_t>(cluster)]) {
      if (shared.vertex(m).kind != member_kind || !adj.both(shared, cluster, m)) {
        throw MalformedGadget(shared.vertex_name(cluster) +
                              " has an arc to a foreign vertex");
      }
      members.push_back(m);
    }
    if (members.empty()) {
      throw MalformedGadget("dangling cluster " + shared.vertex_name(cluster));
    }
    return members;
  };

  // weight generator clusters: |beta| from the color, sign from U_b
  for (int y = 0; y < shared.vertex_count(); ++y) {
    if (shared.vertex(y).kind != VertexKind::WeightGeneratorCluster) continue;
    Bitmask support = 0;
    int sign = 0;
    std::size_t count = 0;
    for (int u : cluster_members(y, VertexKind::WeightGenerator)) {
      std::vector<int> sources;
      for (int l : adj.in[static_cast<std::size_t>(u)]) {
        if (l == y) continue;
        if (shared.vertex(l).kind != VertexKind::Literal) {
          throw MalformedGadget("weight generator fed by a non-literal");
        }
        if (shared.has_arc(u, l)) {
          throw MalformedGadget("weight generator literal arc is two-way");
        }
        sources.push_back(l);
      }
      auto [sup, pattern] = literal_set(shared, sources, shared.vertex_name(u));
      // every source literal must point on to its negation
      for (int l : sources) {
        const auto& lab = shared.vertex(l).label;
        if (!shared.has_arc(u, ColoredDigraph::literal_index(lab.qubit,
                                                             !lab.negated))) {
          throw MalformedGadget("weight generator misses a negated literal arc");
        }
      }
      if (adj.out[static_cast<std::size_t>(u)].size() != sources.size() + 1) {
        throw MalformedGadget("weight generator has extra out-arcs");
      }
      if (count == 0) support = sup;
      if (sup != support || sup == 0 || hamming_weight(sup) % 2 != 0) {
        throw MalformedGadget("inconsistent weight generator support");
      }
      // members are exactly the patterns where phase * beta < 0
      int implied = -y_phase(support, pattern);
      if (sign != 0 && implied != sign) {
        throw MalformedGadget("weight generator set mixes phases");
      }
      sign = implied;
      ++count;
    }
    if (count != (std::size_t{1} << (hamming_weight(support) - 1))) {
      throw MalformedGadget("weight generator set has the wrong size");
    }
    Rational magnitude = color_value(y) - top_alpha;
    if (magnitude.sign() <= 0) {
      throw MalformedGadget("weight generator cluster color is inconsistent");
    }
    if (!h.beta.emplace(support, sign > 0 ? magnitude : -magnitude).second) {
      throw MalformedGadget("two weight generator clusters on one support");
    }
  }
  Rational top_beta = 0;
  for (const auto& [b, beta] : h.beta) top_beta = std::max(top_beta, beta.abs());

  // clause clusters: |kappa| from the color, sign from the parity of C_b
  for (int z = 0; z < shared.vertex_count(); ++z) {
    if (shared.vertex(z).kind != VertexKind::ClauseCluster) continue;
    Bitmask support = 0;
    int sign = 0;
    std::size_t count = 0;
    for (int c : cluster_members(z, VertexKind::Clause)) {
      std::vector<int> lits;
      for (int l : adj.out[static_cast<std::size_t>(c)]) {
        if (l == z) continue;
        if (shared.vertex(l).kind != VertexKind::Literal ||
            !adj.both(shared, c, l)) {
          throw MalformedGadget("clause joined to a non-literal");
        }
        lits.push_back(l);
      }
      auto [sup, pattern] = literal_set(shared, lits, shared.vertex_name(c));
      if (count == 0) support = sup;
      if (sup != support || sup == 0) {
        throw MalformedGadget("inconsistent clause support");
      }
      int implied = (hamming_weight(pattern) & 1) ? -1 : 1;
      if (sign != 0 && implied != sign) {
        throw MalformedGadget("clause set mixes parities");
      }
      sign = implied;
      ++count;
    }
    if (count != (std::size_t{1} << (hamming_weight(support) - 1))) {
      throw MalformedGadget("clause set has the wrong size");
    }
    Rational magnitude = color_value(z) - top_alpha - top_beta;
    if (magnitude.sign() <= 0) {
      throw MalformedGadget("clause cluster color is inconsistent");
    }
    if (!h.kappa.emplace(support, sign > 0 ? magnitude : -magnitude).second) {
      throw MalformedGadget("two clause clusters on one support");
    }
  }
  return h;
}

namespace {

const char* kind_shape(VertexKind kind) {
  switch (kind) {
    case VertexKind::Literal:
      return "circle";
    case VertexKind::Assignment:
      return "doublecircle";
    case VertexKind::Generator:
      return "box";
    case VertexKind::WeightGenerator:
      return "diamond";
    case VertexKind::WeightGeneratorCluster:
      return "hexagon";
    case VertexKind::Clause:
      return "triangle";
    case VertexKind::ClauseCluster:
      return "octagon";
  }
  return "ellipse";
}

}  // namespace

std::string export_ctg_dot(const ColoredDigraph& g) {
  std::ostringstream out;
  out << "digraph ctg {\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    const CtgVertex& vx = g.vertex(v);
    out << "  v" << v << " [shape=" << kind_shape(vx.kind) << ", label=\""
        << g.vertex_name(v);
    if (vx.color.value) out << "\\n(" << vx.color.value->to_string() << ")";
    out << "\"];\n";
  }
  for (auto [a, b] : g.arcs()) {
    bool two_way = g.has_arc(b, a);
    if (two_way && b < a) continue;
    out << "  v" << a << " -> v" << b;
    if (two_way) out << " [dir=none]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_ctg_json(const ColoredDigraph& g) {
  nlohmann::ordered_json doc;
  doc["qubits"] = g.qubits();
  nlohmann::ordered_json vertices = nlohmann::ordered_json::array();
  for (int v = 0; v < g.vertex_count(); ++v) {
    const CtgVertex& vx = g.vertex(v);
    nlohmann::ordered_json item;
    item["id"] = v;
    item["kind"] = kind_name(vx.kind);
    item["name"] = g.vertex_name(v);
    if (vx.color.value) {
      item["color"] = {{"exact", vx.color.value->to_string()},
                       {"value", vx.color.value->to_double()}};
    } else {
      item["color"] = nullptr;
    }
    vertices.push_back(std::move(item));
  }
  doc["vertices"] = std::move(vertices);
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (auto [a, b] : g.arcs()) {
    bool two_way = g.has_arc(b, a);
    if (two_way && b < a) continue;
    edges.push_back({{"from", a}, {"to", b}, {"directed", !two_way}});
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

}  // namespace stoqsym
