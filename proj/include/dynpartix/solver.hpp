#pragma once

// The full pipeline: primal graph, elimination order, decomposition,
// normalization. The DP entry points in dp.hpp run on the result.

#include <cstdint>
#include <vector>

#include "dynpartix/af.hpp"
#include "dynpartix/decomposition.hpp"
#include "dynpartix/dp.hpp"
#include "dynpartix/normalize.hpp"

namespace dynpartix {

struct Pipeline {
  PrimalGraph graph;
  std::vector<Vertex> order;
  TreeDecomposition decomposition;
  NormalizedDecomposition normalized;

  [[nodiscard]] int width() const { return decomposition.width(); }
};

inline Pipeline prepare(const ArgumentationFramework& af, Heuristic h = Heuristic::min_fill, std::uint64_t seed = 0) {
  Pipeline p;
  p.graph = primal_graph(af);
  p.order = elimination_order(p.graph, h, seed);
  p.decomposition = decompose(p.graph, p.order);
  p.normalized = normalize(p.decomposition);
  return p;
}

}  // namespace dynpartix
