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

#include "stoqsym/gi.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace stoqsym::gi {

CompactGraph CompactGraph::from(const ColoredDigraph& g) {
  CompactGraph c;
  c.n = g.vertex_count();
  for (const CtgVertex& v : g.vertices()) c.palette_colors.push_back(v.color);
  std::sort(c.palette_colors.begin(), c.palette_colors.end());
  c.palette_colors.erase(
      std::unique(c.palette_colors.begin(), c.palette_colors.end()),
      c.palette_colors.end());
  for (const auto& pc : c.palette_colors) c.palette.push_back(pc.to_string());
  c.color.resize(static_cast<std::size_t>(c.n));
  for (int v = 0; v < c.n; ++v) {
    auto it = std::lower_bound(c.palette_colors.begin(), c.palette_colors.end(),
                               g.vertex(v).color);
    c.color[static_cast<std::size_t>(v)] =
        static_cast<int>(it - c.palette_colors.begin());
  }
  c.out_only.resize(static_cast<std::size_t>(c.n));
  c.in_only.resize(static_cast<std::size_t>(c.n));
  c.both.resize(static_cast<std::size_t>(c.n));
  for (auto [a, b] : g.arcs()) {
    if (g.has_arc(b, a)) {
      c.both[static_cast<std::size_t>(a)].push_back(b);
    } else {
      c.out_only[static_cast<std::size_t>(a)].push_back(b);
      c.in_only[static_cast<std::size_t>(b)].push_back(a);
    }
  }
  return c;
}

CompactGraph CompactGraph::with_vertex(const VertexColor& vcolor,
                                       const std::vector<int>& neighbours) const {
  CompactGraph c = *this;
  auto it = std::lower_bound(c.palette_colors.begin(), c.palette_colors.end(),
                             vcolor);
  int rank = static_cast<int>(it - c.palette_colors.begin());
  if (it == c.palette_colors.end() || !(*it == vcolor)) {
    c.palette_colors.insert(it, vcolor);
    c.palette.insert(c.palette.begin() + rank, vcolor.to_string());
    for (int& col : c.color) {
      if (col >= rank) ++col;
    }
  }
  int v = c.n++;
  c.color.push_back(rank);
  c.out_only.emplace_back();
  c.in_only.emplace_back();
  c.both.emplace_back(neighbours);
  for (int w : neighbours) c.both[static_cast<std::size_t>(w)].push_back(v);
  return c;
}

namespace {

constexpr std::uint64_t kFrom = std::uint64_t{1} << 42;
constexpr std::uint64_t kTo = std::uint64_t{1} << 21;
constexpr std::uint64_t kBoth = 1;

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h *= 0xff51afd7ed558ccdULL;
  return h ^ (h >> 33);
}

inline std::size_t at(int i) { return static_cast<std::size_t>(i); }

// Ordered partition of the vertex set. Cell ids are start positions in lab.
struct Partition {
  std::vector<int> lab;       // vertices in cell order
  std::vector<int> cell;      // cell[v] = start of v's cell
  std::vector<int> cell_end;  // cell_end[start] = one past the last position
  int cells = 0;

  bool discrete(int n) const { return cells == n; }
};

class Refiner {
 public:
  explicit Refiner(const CompactGraph& g)
      : g_(g), key_(at(g.n), 0), in_queue_(at(g.n), 0) {}

  // Refines p to the coarsest equitable partition finer than p, starting
  // from the splitters in `queue`. Returns an invariant trace hash.
  std::uint64_t refine(Partition& p, std::deque<int> queue) {
    std::uint64_t trace = 0x1234567ULL;
    for (int s : queue) in_queue_[at(s)] = 1;
    std::vector<int> splitter;
    std::vector<int> touched, touched_cells;
    while (!queue.empty() && !p.discrete(g_.n)) {
      int w = queue.front();
      queue.pop_front();
      in_queue_[at(w)] = 0;
      splitter.assign(p.lab.begin() + w, p.lab.begin() + p.cell_end[at(w)]);

      touched.clear();
      auto bump = [&](int y, std::uint64_t amount) {
        if (key_[at(y)] == 0) touched.push_back(y);
        key_[at(y)] += amount;
      };
      for (int x : splitter) {
        for (int y : g_.out_only[at(x)]) bump(y, kFrom);
        for (int y : g_.in_only[at(x)]) bump(y, kTo);
        for (int y : g_.both[at(x)]) bump(y, kBoth);
      }
      touched_cells.clear();
      for (int y : touched) touched_cells.push_back(p.cell[at(y)]);
      std::sort(touched_cells.begin(), touched_cells.end());
      touched_cells.erase(std::unique(touched_cells.begin(), touched_cells.end()),
                          touched_cells.end());

      trace = mix(trace, static_cast<std::uint64_t>(w));
      for (int s : touched_cells) {
        int e = p.cell_end[at(s)];
        if (e - s == 1) continue;
        auto first = p.lab.begin() + s;
        auto last = p.lab.begin() + e;
        std::sort(first, last, [&](int a, int b) { return key_[at(a)] < key_[at(b)]; });
        if (key_[at(*first)] == key_[at(*(last - 1))]) continue;

        bool was_queued = in_queue_[at(s)] != 0;
        int largest_start = s, largest_size = 0;
        std::vector<int> starts;
        int start = s;
        for (int i = s; i < e; ++i) {
          bool boundary =
              i + 1 == e || key_[at(p.lab[at(i)])] != key_[at(p.lab[at(i + 1)])];
          if (!boundary) continue;
          starts.push_back(start);
          p.cell_end[at(start)] = i + 1;
          for (int j = start; j <= i; ++j) p.cell[at(p.lab[at(j)])] = start;
          trace = mix(trace, (static_cast<std::uint64_t>(start) << 32) |
                                 static_cast<std::uint64_t>(i + 1 - start));
          trace = mix(trace, key_[at(p.lab[at(i)])]);
          if (i + 1 - start > largest_size) {
            largest_size = i + 1 - start;
            largest_start = start;
          }
          start = i + 1;
        }
        p.cells += static_cast<int>(starts.size()) - 1;
        for (int st : starts) {
          if (in_queue_[at(st)]) continue;
          if (!was_queued && st == largest_start) continue;
          in_queue_[at(st)] = 1;
          queue.push_back(st);
        }
      }
      for (int y : touched) key_[at(y)] = 0;
    }
    for (int s : queue) in_queue_[at(s)] = 0;
    return mix(trace, static_cast<std::uint64_t>(p.cells));
  }

 private:
  const CompactGraph& g_;
  std::vector<std::uint64_t> key_;
  std::vector<char> in_queue_;
};

struct Leaf {
  std::vector<int> lab;
  std::vector<std::uint64_t> arcs;  // canonical arc list
  std::vector<std::uint64_t> trace;
  std::vector<int> path;
};

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(at(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[at(x)] != x) {
      parent_[at(x)] = parent_[at(parent_[at(x)])];
      x = parent_[at(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[at(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

class Search {
 public:
  explicit Search(const CompactGraph& g) : g_(g), refiner_(g) {}

  CanonicalForm run() {
    CanonicalForm out;
    const int n = g_.n;
    if (n == 0) {
      out.certificate = make_certificate({}, {});
      return out;
    }
    Partition root;
    root.lab.resize(at(n));
    std::iota(root.lab.begin(), root.lab.end(), 0);
    std::stable_sort(root.lab.begin(), root.lab.end(), [&](int a, int b) {
      return g_.color[at(a)] < g_.color[at(b)];
    });
    root.cell.resize(at(n));
    root.cell_end.assign(at(n), 0);
    std::deque<int> queue;
    int start = 0;
    for (int i = 0; i < n; ++i) {
      if (i + 1 == n ||
          g_.color[at(root.lab[at(i)])] != g_.color[at(root.lab[at(i + 1)])]) {
        root.cell_end[at(start)] = i + 1;
        for (int j = start; j <= i; ++j) root.cell[at(root.lab[at(j)])] = start;
        queue.push_back(start);
        ++root.cells;
        start = i + 1;
      }
    }
    std::vector<std::uint64_t> trace{refiner_.refine(root, queue)};
    std::vector<int> path;
    dfs(root, path, trace, true, 0);

    out.labeling.assign(at(n), 0);
    for (int i = 0; i < n; ++i) out.labeling[at(best_.lab[at(i)])] = i;
    out.certificate = make_certificate(best_.lab, best_.arcs);
    out.generators = std::move(generators_);
    out.tree_nodes = nodes_;
    return out;
  }

 private:
  std::vector<std::uint64_t> leaf_arcs(const std::vector<int>& lab) const {
    std::vector<int> canon(at(g_.n));
    for (int i = 0; i < g_.n; ++i) canon[at(lab[at(i)])] = i;
    std::vector<std::uint64_t> arcs;
    for (int v = 0; v < g_.n; ++v) {
      auto cv = static_cast<std::uint64_t>(canon[at(v)]) << 32;
      for (int y : g_.out_only[at(v)]) arcs.push_back(cv | static_cast<std::uint32_t>(canon[at(y)]));
      for (int y : g_.both[at(v)]) arcs.push_back(cv | static_cast<std::uint32_t>(canon[at(y)]));
    }
    std::sort(arcs.begin(), arcs.end());
    return arcs;
  }

  Certificate make_certificate(const std::vector<int>& lab,
                               const std::vector<std::uint64_t>& arcs) const {
    std::string bytes;
    auto put = [&bytes](std::uint64_t v, int width) {
      for (int i = 0; i < width; ++i) {
        bytes.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
      }
    };
    put(static_cast<std::uint64_t>(g_.n), 4);
    // color runs in canonical order
    int i = 0;
    while (i < g_.n) {
      int c = g_.color[at(lab[at(i)])];
      int j = i;
      while (j < g_.n && g_.color[at(lab[at(j)])] == c) ++j;
      const std::string& name = g_.palette[at(c)];
      put(name.size(), 2);
      bytes += name;
      put(static_cast<std::uint64_t>(j - i), 4);
      i = j;
    }
    put(arcs.size(), 4);
    for (std::uint64_t a : arcs) {
      put(a >> 32, 4);
      put(a & 0xffffffffULL, 4);
    }
    return Certificate{std::move(bytes)};
  }

  static int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return static_cast<int>(k);
  }

  // Returns the depth at which the search continues: depth - 1 on normal
  // completion, or a shallower ancestor after an automorphism was found.
  int dfs(const Partition& p, std::vector<int>& path,
          std::vector<std::uint64_t>& trace, bool eq_first, int cmp_best) {
    ++nodes_;
    const int depth = static_cast<int>(path.size());
    if (p.discrete(g_.n)) return leaf(p, path, trace, eq_first, cmp_best);

    // first smallest non-singleton cell
    int target = -1, target_size = g_.n + 1;
    for (int s = 0; s < g_.n; s = p.cell_end[at(s)]) {
      int size = p.cell_end[at(s)] - s;
      if (size > 1 && size < target_size) {
        target = s;
        target_size = size;
      }
    }
    std::vector<int> candidates(p.lab.begin() + target,
                                p.lab.begin() + p.cell_end[at(target)]);
    std::sort(candidates.begin(), candidates.end());

    std::vector<int> explored;
    std::size_t orbit_gens = static_cast<std::size_t>(-1);
    UnionFind orbits(0);
    for (int w : candidates) {
      if (!explored.empty()) {
        if (orbit_gens != generators_.size()) {
          orbits = stabilizer_orbits(path);
          orbit_gens = generators_.size();
        }
        bool redundant = false;
        for (int e : explored) {
          if (orbits.find(e) == orbits.find(w)) {
            redundant = true;
            break;
          }
        }
        if (redundant) continue;
      }
      explored.push_back(w);

      Partition child = p;
      individualize(child, w);
      std::uint64_t t = refiner_.refine(child, std::deque<int>{child.cell[at(w)]});
      const std::size_t d1 = at(depth + 1);
      bool child_eq_first = have_first_ && eq_first &&
                            d1 < first_.trace.size() && first_.trace[d1] == t;
      int child_cmp = cmp_best;
      if (have_first_ && child_cmp == 0) {
        if (d1 >= best_.trace.size() || t > best_.trace[d1]) {
          child_cmp = 1;
        } else if (t < best_.trace[d1]) {
          child_cmp = -1;
        }
      }
      if (have_first_ && !child_eq_first && child_cmp < 0) continue;

      path.push_back(w);
      trace.push_back(t);
      int r = dfs(child, path, trace, child_eq_first, child_cmp);
      path.pop_back();
      trace.pop_back();
      if (r < depth) return r;
    }
    return depth - 1;
  }

  int leaf(const Partition& p, const std::vector<int>& path,
           const std::vector<std::uint64_t>& trace, bool eq_first,
           int cmp_best) {
    const int depth = static_cast<int>(path.size());
    std::vector<std::uint64_t> arcs = leaf_arcs(p.lab);
    if (!have_first_) {
      first_ = Leaf{p.lab, std::move(arcs), trace, path};
      best_ = first_;
      have_first_ = true;
      return depth - 1;
    }
    if (eq_first && trace.size() == first_.trace.size() && arcs == first_.arcs) {
      add_generator(first_.lab, p.lab);
      return common_prefix(path, first_.path);
    }
    if (cmp_best == 0 && trace.size() == best_.trace.size()) {
      if (arcs == best_.arcs) {
        add_generator(best_.lab, p.lab);
        return common_prefix(path, best_.path);
      }
      if (arcs > best_.arcs) best_ = Leaf{p.lab, std::move(arcs), trace, path};
      return depth - 1;
    }
    if (cmp_best > 0) best_ = Leaf{p.lab, std::move(arcs), trace, path};
    return depth - 1;
  }

  void add_generator(const std::vector<int>& from, const std::vector<int>& to) {
    Permutation gamma(at(g_.n));
    bool identity = true;
    for (int i = 0; i < g_.n; ++i) {
      gamma[at(from[at(i)])] = to[at(i)];
      identity = identity && from[at(i)] == to[at(i)];
    }
    if (!identity) generators_.push_back(std::move(gamma));
  }

  UnionFind stabilizer_orbits(const std::vector<int>& fixed) const {
    UnionFind uf(g_.n);
    for (const Permutation& gamma : generators_) {
      bool fixes = std::all_of(fixed.begin(), fixed.end(),
                               [&](int v) { return gamma[at(v)] == v; });
      if (!fixes) continue;
      for (int v = 0; v < g_.n; ++v) uf.unite(v, gamma[at(v)]);
    }
    return uf;
  }

  static void individualize(Partition& p, int v) {
    int s = p.cell[at(v)];
    int e = p.cell_end[at(s)];
    auto it = std::find(p.lab.begin() + s, p.lab.begin() + e, v);
    std::iter_swap(p.lab.begin() + s, it);
    p.cell_end[at(s)] = s + 1;
    p.cell_end[at(s + 1)] = e;
    for (int j = s + 1; j < e; ++j) p.cell[at(p.lab[at(j)])] = s + 1;
    p.cell[at(v)] = s;
    ++p.cells;
  }

  const CompactGraph& g_;
  Refiner refiner_;
  bool have_first_ = false;
  Leaf first_, best_;
  std::vector<Permutation> generators_;
  std::size_t nodes_ = 0;
};

}  // namespace

CanonicalForm canonicalize(const CompactGraph& g) { return Search(g).run(); }

Certificate canonical_certificate(const ColoredDigraph& g) {
  return canonicalize(CompactGraph::from(g)).certificate;
}

std::optional<VertexMapping> isomorphic(const ColoredDigraph& g1,
                                        const ColoredDigraph& g2) {
  if (g1.vertex_count() != g2.vertex_count() ||
      g1.arcs().size() != g2.arcs().size()) {
    return std::nullopt;
  }
  CompactGraph c1 = CompactGraph::from(g1);
  CompactGraph c2 = CompactGraph::from(g2);
  if (c1.palette != c2.palette) return std::nullopt;
  std::vector<int> count1(c1.palette.size()), count2(c2.palette.size());
  for (int c : c1.color) ++count1[at(c)];
  for (int c : c2.color) ++count2[at(c)];
  if (count1 != count2) return std::nullopt;

  CanonicalForm f1 = canonicalize(c1);
  CanonicalForm f2 = canonicalize(c2);
  if (!(f1.certificate == f2.certificate)) return std::nullopt;
  std::vector<int> inverse2(at(c2.n));
  for (int v = 0; v < c2.n; ++v) inverse2[at(f2.labeling[at(v)])] = v;
  VertexMapping mapping(at(c1.n));
  for (int v = 0; v < c1.n; ++v) mapping[at(v)] = inverse2[at(f1.labeling[at(v)])];
  return mapping;
}

std::vector<Permutation> automorphism_generators(const ColoredDigraph& g) {
  return canonicalize(CompactGraph::from(g)).generators;
}

bool verify_mapping(const ColoredDigraph& g1, const ColoredDigraph& g2,
                    const VertexMapping& mapping) {
  const int n = g1.vertex_count();
  if (g2.vertex_count() != n || static_cast<int>(mapping.size()) != n) return false;
  std::vector<char> hit(at(n), 0);
  for (int v = 0; v < n; ++v) {
    int m = mapping[at(v)];
    if (m < 0 || m >= n || hit[at(m)]) return false;
    hit[at(m)] = 1;
    if (!(g1.vertex(v).color == g2.vertex(m).color)) return false;
  }
  if (g1.arcs().size() != g2.arcs().size()) return false;
  for (auto [a, b] : g1.arcs()) {
    if (!g2.has_arc(mapping[at(a)], mapping[at(b)])) return false;
  }
  return true;
}

}  // namespace stoqsym::gi
