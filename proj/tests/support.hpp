#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dynpartix/af.hpp"
#include "dynpartix/aspartix.hpp"
#include "dynpartix/decomposition.hpp"

namespace dynpartix::testing {

inline constexpr const char* kInputAF =
    "arg(a). arg(b). arg(c). arg(d). arg(e). arg(f). arg(g).\n"
    "att(a,b). att(c,b). att(c,d). att(d,c).\n"
    "att(d,e). att(e,g). att(f,e). att(g,f).\n";

inline ArgumentationFramework example1() { return parse_aspartix(std::string_view(kInputAF)); }

/// The hand-made width-2 decomposition of the running example:
/// {c,d} root, children {b,c} and {d,e}, grandchildren {a,b} and {e,f,g}.
inline TreeDecomposition example1_decomposition(const PrimalGraph& g) {
  auto bag = [&g](std::initializer_list<const char*> names) {
    Bag b;
    for (const char* n : names) b.push_back(g.index(n));
    std::sort(b.begin(), b.end());
    return b;
  };
  TreeDecomposition td;
  td.nodes = {
      {bag({"c", "d"}), {1, 2}},
      {bag({"b", "c"}), {3}},
      {bag({"d", "e"}), {4}},
      {bag({"a", "b"}), {}},
      {bag({"e", "f", "g"}), {}},
  };
  td.root = 0;
  return td;
}

inline std::vector<std::string> numbered_names(std::size_t n, const std::string& prefix = "x") {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

/// Every ordered pair (self attacks included) present with probability p.
inline ArgumentationFramework random_af(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  const auto names = numbered_names(n, "x");
  std::vector<std::pair<std::string, std::string>> attacks;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (coin(rng)) attacks.emplace_back(names[i], names[j]);
    }
  }
  return ArgumentationFramework(names, attacks);
}

inline PrimalGraph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  PrimalGraph g(numbered_names(n, "v"));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

inline ArgumentationFramework af_from(std::vector<std::string> args,
                                      std::vector<std::pair<std::string, std::string>> attacks) {
  return ArgumentationFramework(std::move(args), attacks);
}

}  // namespace dynpartix::testing
