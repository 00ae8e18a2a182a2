#pragma once

// Normalized tree decompositions: every node is a Leaf (empty bag), an
// Introduce or Forget of a single vertex, or a binary Join of two children
// with equal bags. The root bag is empty.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dynpartix/decomposition.hpp"

namespace dynpartix {

enum class NodeKind { leaf, introduce, forget, join };

inline std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::leaf: return "Leaf";
    case NodeKind::introduce: return "Introduce";
    case NodeKind::forget: return "Forget";
    case NodeKind::join: return "Join";
  }
  return "?";
}

struct NormalizedNode {
  NodeKind kind = NodeKind::leaf;
  Vertex vertex = 0;  // introduced/forgotten vertex; unused for Leaf and Join
  Bag bag;
  std::vector<std::size_t> children;
};

/// Nodes are stored children-first: every child id is smaller than its
/// parent's id and the root is the last node. Iterating `nodes` in order is
/// therefore a bottom-up traversal.
struct NormalizedDecomposition {
  std::vector<NormalizedNode> nodes;

  [[nodiscard]] std::size_t root() const { return nodes.size() - 1; }

  [[nodiscard]] int width() const {
    std::size_t widest = 0;
    for (const auto& n : nodes) widest = std::max(widest, n.bag.size());
    return static_cast<int>(widest) - 1;
  }

  [[nodiscard]] TreeDecomposition as_tree() const {
    TreeDecomposition td;
    td.nodes.reserve(nodes.size());
    for (const auto& n : nodes) td.nodes.push_back({n.bag, n.children});
    td.root = root();
    return td;
  }
};

namespace detail {

class Normalizer {
 public:
  std::size_t add(NodeKind kind, Vertex v, Bag bag, std::vector<std::size_t> children) {
    out_.nodes.push_back({kind, v, std::move(bag), std::move(children)});
    return out_.nodes.size() - 1;
  }

  std::size_t leaf() { return add(NodeKind::leaf, 0, {}, {}); }

  std::size_t introduce(std::size_t child, Vertex v) {
    Bag bag = out_.nodes[child].bag;
    bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
    return add(NodeKind::introduce, v, std::move(bag), {child});
  }

  std::size_t forget(std::size_t child, Vertex v) {
    Bag bag = out_.nodes[child].bag;
    bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
    return add(NodeKind::forget, v, std::move(bag), {child});
  }

  std::size_t join(std::size_t left, std::size_t right) {
    return add(NodeKind::join, 0, out_.nodes[left].bag, {left, right});
  }

  // Forget what the target lacks, then introduce what it adds.
  std::size_t bridge(std::size_t from, const Bag& target) {
    const Bag current = out_.nodes[from].bag;
    std::vector<Vertex> drop;
    std::vector<Vertex> gain;
    std::set_difference(current.begin(), current.end(), target.begin(), target.end(), std::back_inserter(drop));
    std::set_difference(target.begin(), target.end(), current.begin(), current.end(), std::back_inserter(gain));
    for (Vertex v : drop) from = forget(from, v);
    for (Vertex v : gain) from = introduce(from, v);
    return from;
  }

  NormalizedDecomposition take() { return std::move(out_); }

 private:
  NormalizedDecomposition out_;
};

inline void check_shape(const TreeDecomposition& td) {
  // Connectedness is graph independent; cover and edge conditions need a
  // graph and are checked by validate_normalized.
  std::size_t max_vertex = 0;
  for (const auto& n : td.nodes) {
    if (!std::is_sorted(n.bag.begin(), n.bag.end()) ||
        std::adjacent_find(n.bag.begin(), n.bag.end()) != n.bag.end()) {
      throw std::invalid_argument("decomposition bags must be sorted and duplicate free");
    }
    for (Vertex v : n.bag) max_vertex = std::max<std::size_t>(max_vertex, v + 1);
  }
  std::vector<std::string> names(max_vertex);
  for (Vertex v = 0; v < max_vertex; ++v) names[v] = "#" + std::to_string(v);
  auto problems = validate(td, PrimalGraph(names));
  // Vertices absent from every bag are fine here; only report real damage.
  problems.erase(std::remove_if(problems.begin(), problems.end(),
                                [](const std::string& p) { return p.rfind("cover:", 0) == 0; }),
                 problems.end());
  if (!problems.empty()) throw std::invalid_argument("invalid tree decomposition: " + problems.front());
}

}  // namespace detail

/// Rewrites a tree decomposition into normalized form without changing its
/// width. Nodes with k > 2 children become a chain of k-1 Joins.
inline NormalizedDecomposition normalize(const TreeDecomposition& td) {
  detail::check_shape(td);
  detail::Normalizer norm;

  // Post-order without recursion; built[i] is the normalized node whose bag
  // equals td.nodes[i].bag.
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> built(td.nodes.size(), kUnset);
  std::vector<std::pair<std::size_t, bool>> stack{{td.root, false}};
  while (!stack.empty()) {
    auto [i, expanded] = stack.back();
    stack.pop_back();
    const TreeNode& node = td.nodes[i];
    if (!expanded) {
      stack.emplace_back(i, true);
      for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.emplace_back(*it, false);
      continue;
    }
    if (node.children.empty()) {
      built[i] = norm.bridge(norm.leaf(), node.bag);
      continue;
    }
    std::size_t acc = kUnset;
    for (std::size_t c : node.children) {
      const std::size_t branch = norm.bridge(built[c], node.bag);
      acc = acc == kUnset ? branch : norm.join(acc, branch);
    }
    built[i] = acc;
  }
  norm.bridge(built[td.root], {});
  return norm.take();
}

/// Kind-specific invariants plus the tree decomposition conditions for `g`.
inline std::vector<std::string> validate_normalized(const NormalizedDecomposition& nd, const PrimalGraph& g) {
  std::vector<std::string> violations;
  if (nd.nodes.empty()) {
    violations.emplace_back("structure: normalized decomposition has no nodes");
    return violations;
  }
  auto node_name = [](std::size_t i) { return "node " + std::to_string(i); };

  for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
    const auto& n = nd.nodes[i];
    for (std::size_t c : n.children) {
      if (c >= i) {
        violations.push_back(node_name(i) + ": child " + std::to_string(c) + " is not stored before its parent");
      }
    }
    if (std::any_of(n.children.begin(), n.children.end(), [i](std::size_t c) { return c >= i; })) continue;

    auto with = [&](const Bag& b, Vertex v) {
      Bag r = b;
      r.insert(std::upper_bound(r.begin(), r.end(), v), v);
      return r;
    };
    auto contains = [](const Bag& b, Vertex v) { return std::binary_search(b.begin(), b.end(), v); };

    switch (n.kind) {
      case NodeKind::leaf:
        if (!n.children.empty()) violations.push_back(node_name(i) + ": Leaf has children");
        if (!n.bag.empty()) violations.push_back(node_name(i) + ": Leaf bag is not empty");
        break;
      case NodeKind::introduce: {
        if (n.children.size() != 1) {
          violations.push_back(node_name(i) + ": Introduce must have exactly one child");
          break;
        }
        const Bag& cb = nd.nodes[n.children[0]].bag;
        if (contains(cb, n.vertex) || n.bag != with(cb, n.vertex)) {
          violations.push_back(node_name(i) + ": Introduce bag is not child bag plus the new vertex");
        }
        break;
      }
      case NodeKind::forget: {
        if (n.children.size() != 1) {
          violations.push_back(node_name(i) + ": Forget must have exactly one child");
          break;
        }
        const Bag& cb = nd.nodes[n.children[0]].bag;
        if (!contains(cb, n.vertex) || cb != with(n.bag, n.vertex)) {
          violations.push_back(node_name(i) + ": Forget bag is not child bag minus the forgotten vertex");
        }
        break;
      }
      case NodeKind::join:
        if (n.children.size() != 2) {
          violations.push_back(node_name(i) + ": Join must have exactly two children");
          break;
        }
        if (nd.nodes[n.children[0]].bag != n.bag || nd.nodes[n.children[1]].bag != n.bag) {
          violations.push_back(node_name(i) + ": Join child bags differ from the Join bag");
        }
        break;
    }
  }
  if (!nd.nodes.back().bag.empty()) violations.push_back("root: bag of the root is not empty");
  for (auto& v : validate(nd.as_tree(), g)) violations.push_back(std::move(v));
  return violations;
}

/// Same layout as the plain decomposition dump, with the node kind in front
/// of the id: `<indent><Kind>[(v)] <id>: {...}`.
inline void write_text(std::ostream& out, const NormalizedDecomposition& nd, const std::vector<std::string>& names) {
  if (nd.nodes.empty()) return;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{nd.root(), 0}};
  while (!stack.empty()) {
    const auto [i, depth] = stack.back();
    stack.pop_back();
    const auto& n = nd.nodes[i];
    out << std::string(depth * 2, ' ') << to_string(n.kind);
    if (n.kind == NodeKind::introduce || n.kind == NodeKind::forget) {
      out << '(' << (n.vertex < names.size() ? names[n.vertex] : std::to_string(n.vertex)) << ')';
    }
    out << ' ' << i << ": ";
    detail::write_bag(out, n.bag, names);
    out << '\n';
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.emplace_back(*it, depth + 1);
  }
}

}  // namespace dynpartix
