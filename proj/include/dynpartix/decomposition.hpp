#pragma once

// Primal graphs, elimination-ordering heuristics and bucket-elimination tree
// decompositions.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dynpartix/af.hpp"

namespace dynpartix {

using Vertex = ArgId;
using Bag = std::vector<Vertex>;  // sorted, unique

/// Undirected graph with named vertices. Vertex ids index `names()`.
class PrimalGraph {
 public:
  PrimalGraph() = default;

  explicit PrimalGraph(std::vector<std::string> names) : names_(std::move(names)), adj_(names_.size()) {}

  PrimalGraph(std::vector<std::string> names, const std::vector<std::pair<Vertex, Vertex>>& edges)
      : PrimalGraph(std::move(names)) {
    for (const auto& [u, v] : edges) add_edge(u, v);
  }

  /// Adds {u,v}; self loops are ignored.
  void add_edge(Vertex u, Vertex v) {
    if (u >= adj_.size() || v >= adj_.size()) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) return;
    if (adj_[u].insert(v).second) {
      adj_[v].insert(u);
      ++edge_count_;
    }
  }

  [[nodiscard]] std::size_t vertex_count() const noexcept { return names_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] const std::string& name(Vertex v) const { return names_.at(v); }
  [[nodiscard]] const std::set<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  [[nodiscard]] bool adjacent(Vertex u, Vertex v) const { return adj_.at(u).count(v) != 0; }

  [[nodiscard]] Vertex index(std::string_view name) const {
    for (Vertex v = 0; v < names_.size(); ++v) {
      if (names_[v] == name) return v;
    }
    throw std::invalid_argument("unknown vertex '" + std::string(name) + "'");
  }

  /// Each edge once, as (u, v) with u < v, ascending.
  [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < adj_.size(); ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::set<Vertex>> adj_;
  std::size_t edge_count_ = 0;
};

/// Undirected shadow of the attack relation. Vertex ids equal argument ids.
inline PrimalGraph primal_graph(const ArgumentationFramework& af) {
  PrimalGraph g(af.arguments());
  for (const auto& [a, b] : af.attacks()) g.add_edge(a, b);
  return g;
}

enum class Heuristic { min_fill, min_degree, mcs };

inline constexpr Heuristic kAllHeuristics[] = {Heuristic::min_fill, Heuristic::min_degree, Heuristic::mcs};

inline std::string_view to_string(Heuristic h) {
  switch (h) {
    case Heuristic::min_fill: return "min-fill";
    case Heuristic::min_degree: return "min-degree";
    case Heuristic::mcs: return "mcs";
  }
  throw std::invalid_argument("unknown heuristic");
}

inline Heuristic parse_heuristic(std::string_view s) {
  for (Heuristic h : kAllHeuristics) {
    if (to_string(h) == s) return h;
  }
  throw std::invalid_argument("unknown heuristic '" + std::string(s) + "' (expected min-fill, min-degree or mcs)");
}

namespace detail {

// Picks among tied candidates. Seed 0 takes the lexicographically smallest
// name; any other seed draws from a stream owned by the caller.
class TieBreaker {
 public:
  TieBreaker(const PrimalGraph& g, std::uint64_t seed) : g_(g), seeded_(seed != 0), rng_(seed) {}

  Vertex pick(const std::vector<Vertex>& tied) {
    if (!seeded_) {
      return *std::min_element(tied.begin(), tied.end(),
                               [this](Vertex l, Vertex r) { return g_.name(l) < g_.name(r); });
    }
    return tied[static_cast<std::size_t>(rng_() % tied.size())];
  }

 private:
  const PrimalGraph& g_;
  bool seeded_;
  std::mt19937_64 rng_;
};

inline std::size_t fill_in(const std::vector<std::set<Vertex>>& adj, Vertex v) {
  std::size_t missing = 0;
  const auto& nb = adj[v];
  for (auto i = nb.begin(); i != nb.end(); ++i) {
    for (auto j = std::next(i); j != nb.end(); ++j) {
      if (adj[*i].count(*j) == 0) ++missing;
    }
  }
  return missing;
}

inline std::vector<Vertex> greedy_elimination(const PrimalGraph& g, Heuristic h, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  std::vector<std::set<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) adj[v] = g.neighbors(v);

  auto score_of = [&](Vertex v) { return h == Heuristic::min_fill ? fill_in(adj, v) : adj[v].size(); };

  std::vector<std::size_t> score(n);
  for (Vertex v = 0; v < n; ++v) score[v] = score_of(v);
  std::vector<bool> done(n, false);
  TieBreaker ties(g, seed);

  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<Vertex> tied;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    tied.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (done[v]) continue;
      if (score[v] < best) {
        best = score[v];
        tied.assign(1, v);
      } else if (score[v] == best) {
        tied.push_back(v);
      }
    }
    const Vertex v = ties.pick(tied);
    order.push_back(v);
    done[v] = true;

    const std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
    for (Vertex u : nb) adj[u].erase(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    }
    adj[v].clear();

    // Only vertices within distance two of v can change score.
    std::set<Vertex> dirty(nb.begin(), nb.end());
    if (h == Heuristic::min_fill) {
      for (Vertex u : nb) dirty.insert(adj[u].begin(), adj[u].end());
    }
    for (Vertex u : dirty) score[u] = score_of(u);
  }
  return order;
}

inline std::vector<Vertex> mcs_elimination(const PrimalGraph& g, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> weight(n, 0);
  std::vector<bool> numbered(n, false);
  TieBreaker ties(g, seed);

  std::vector<Vertex> visit;
  visit.reserve(n);
  std::vector<Vertex> tied;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = 0;
    tied.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (numbered[v]) continue;
      if (tied.empty() || weight[v] > best) {
        best = weight[v];
        tied.assign(1, v);
      } else if (weight[v] == best) {
        tied.push_back(v);
      }
    }
    const Vertex v = ties.pick(tied);
    numbered[v] = true;
    visit.push_back(v);
    for (Vertex u : g.neighbors(v)) {
      if (!numbered[u]) ++weight[u];
    }
  }
  std::reverse(visit.begin(), visit.end());
  return visit;
}

}  // namespace detail

/// A permutation of the graph's vertices to eliminate in order.
///
/// min-degree and min-fill are greedy over the shrinking fill-in graph;
/// mcs runs maximum cardinality search and reverses the visit order. Ties
/// are broken by name when `seed` is 0 and pseudorandomly otherwise.
inline std::vector<Vertex> elimination_order(const PrimalGraph& g, Heuristic h, std::uint64_t seed = 0) {
  switch (h) {
    case Heuristic::min_fill:
    case Heuristic::min_degree:
      return detail::greedy_elimination(g, h, seed);
    case Heuristic::mcs:
      return detail::mcs_elimination(g, seed);
  }
  throw std::invalid_argument("unknown heuristic");
}

struct TreeNode {
  Bag bag;
  std::vector<std::size_t> children;
};

/// A rooted tree of bags over the vertices of some graph.
struct TreeDecomposition {
  std::vector<TreeNode> nodes;
  std::size_t root = 0;

  /// Largest bag size minus one; -1 when every bag is empty.
  [[nodiscard]] int width() const {
    std::size_t widest = 0;
    for (const auto& n : nodes) widest = std::max(widest, n.bag.size());
    return static_cast<int>(widest) - 1;
  }
};

/// Bucket elimination along `order`. Each eliminated vertex v yields one node
/// with bag {v} plus its remaining neighbours, hung below the node of the
/// neighbour eliminated next. Separate components are chained under the
/// last component root.
inline TreeDecomposition decompose(const PrimalGraph& g, const std::vector<Vertex>& order) {
  const std::size_t n = g.vertex_count();
  if (order.size() != n) throw std::invalid_argument("elimination order is not a permutation of the vertices");
  std::vector<std::size_t> position(n, n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= n || position[order[i]] != n) {
      throw std::invalid_argument("elimination order is not a permutation of the vertices");
    }
    position[order[i]] = i;
  }

  TreeDecomposition td;
  if (n == 0) {
    td.nodes.push_back({});
    return td;
  }

  std::vector<std::set<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) adj[v] = g.neighbors(v);

  td.nodes.resize(n);
  std::vector<std::size_t> parent(n, n);
  std::vector<std::size_t> component_roots;
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = order[i];
    auto& bag = td.nodes[i].bag;
    bag.assign(adj[v].begin(), adj[v].end());
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());

    std::size_t next = n;
    for (Vertex u : adj[v]) next = std::min(next, position[u]);
    if (next == n) {
      component_roots.push_back(i);
    } else {
      parent[i] = next;
    }

    const std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
    for (Vertex u : nb) adj[u].erase(v);
    for (std::size_t a = 0; a < nb.size(); ++a) {
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        adj[nb[a]].insert(nb[b]);
        adj[nb[b]].insert(nb[a]);
      }
    }
  }
  td.root = component_roots.back();
  for (std::size_t r : component_roots) {
    if (r != td.root) parent[r] = td.root;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (parent[i] != n) td.nodes[parent[i]].children.push_back(i);
  }
  return td;
}

/// Checks tree shape and the three decomposition conditions (vertex cover,
/// connected occurrences, edge cover). Empty result means valid.
inline std::vector<std::string> validate(const TreeDecomposition& td, const PrimalGraph& g) {
  std::vector<std::string> violations;
  const std::size_t count = td.nodes.size();
  if (count == 0) {
    violations.emplace_back("structure: decomposition has no nodes");
    return violations;
  }
  if (td.root >= count) {
    violations.emplace_back("structure: root index out of range");
    return violations;
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent(count, kNone);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t c : td.nodes[i].children) {
      if (c >= count || c == td.root || parent[c] != kNone) {
        violations.push_back("structure: node " + std::to_string(c) + " is not a proper child of node " +
                             std::to_string(i));
        return violations;
      }
      parent[c] = i;
    }
  }
  // Reachability from the root rules out cycles given single parents.
  std::vector<bool> seen(count, false);
  std::vector<std::size_t> stack{td.root};
  std::size_t reached = 0;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    if (seen[i]) continue;
    seen[i] = true;
    ++reached;
    for (std::size_t c : td.nodes[i].children) stack.push_back(c);
  }
  if (reached != count) {
    violations.emplace_back("structure: " + std::to_string(count - reached) + " node(s) unreachable from the root");
    return violations;
  }

  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> occurrence_tops(n, 0);
  std::vector<bool> covered(n, false);
  for (std::size_t i = 0; i < count; ++i) {
    const Bag& bag = td.nodes[i].bag;
    for (Vertex v : bag) {
      if (v >= n) {
        violations.push_back("structure: node " + std::to_string(i) + " holds unknown vertex id " +
                             std::to_string(v));
        continue;
      }
      covered[v] = true;
      // v's occurrences form one subtree iff exactly one occurrence has a
      // parent without v.
      const bool parent_has = parent[i] != kNone &&
                              std::binary_search(td.nodes[parent[i]].bag.begin(), td.nodes[parent[i]].bag.end(), v);
      if (!parent_has) ++occurrence_tops[v];
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!covered[v]) violations.push_back("cover: vertex " + g.name(v) + " is in no bag");
    if (occurrence_tops[v] > 1) violations.push_back("connectedness: bags containing " + g.name(v) + " are not connected");
  }
  for (const auto& [u, v] : g.edges()) {
    const bool found = std::any_of(td.nodes.begin(), td.nodes.end(), [u = u, v = v](const TreeNode& node) {
      return std::binary_search(node.bag.begin(), node.bag.end(), u) &&
             std::binary_search(node.bag.begin(), node.bag.end(), v);
    });
    if (!found) violations.push_back("edge coverage: edge {" + g.name(u) + "," + g.name(v) + "} is in no bag");
  }
  return violations;
}

namespace detail {

inline void write_bag(std::ostream& out, const Bag& bag, const std::vector<std::string>& names) {
  out << '{';
  for (std::size_t i = 0; i < bag.size(); ++i) {
    if (i != 0) out << ',';
    out << (bag[i] < names.size() ? names[bag[i]] : std::to_string(bag[i]));
  }
  out << '}';
}

}  // namespace detail

/// Indented dump, one node per line: `<depth*2 spaces><id>: {v1,v2,...}`.
inline void write_text(std::ostream& out, const TreeDecomposition& td, const std::vector<std::string>& names) {
  std::vector<std::pair<std::size_t, std::size_t>> stack{{td.root, 0}};
  while (!stack.empty()) {
    const auto [i, depth] = stack.back();
    stack.pop_back();
    out << std::string(depth * 2, ' ') << i << ": ";
    detail::write_bag(out, td.nodes[i].bag, names);
    out << '\n';
    const auto& ch = td.nodes[i].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.emplace_back(*it, depth + 1);
  }
}

}  // namespace dynpartix
