#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "dynpartix/decomposition.hpp"
#include "support.hpp"

namespace dynpartix {
namespace {

PrimalGraph path_abc() {
  PrimalGraph g({"a", "b", "c"});
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return g;
}

PrimalGraph complete(std::size_t n) {
  PrimalGraph g(testing::numbered_names(n, "k"));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

bool is_permutation_of_vertices(const std::vector<Vertex>& order, std::size_t n) {
  std::vector<Vertex> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Vertex> expected(n);
  std::iota(expected.begin(), expected.end(), Vertex{0});
  return sorted == expected;
}

TEST(PrimalGraph, RunningExample) {
  const auto g = primal_graph(testing::example1());
  EXPECT_EQ(g.vertex_count(), 7U);
  EXPECT_EQ(g.edge_count(), 7U);
  EXPECT_TRUE(g.adjacent(g.index("c"), g.index("d")));
}

TEST(PrimalGraph, DegenerateCases) {
  const auto empty = primal_graph(ArgumentationFramework{});
  EXPECT_EQ(empty.vertex_count(), 0U);
  EXPECT_EQ(empty.edge_count(), 0U);
  const auto loop = primal_graph(testing::af_from({"a"}, {{"a", "a"}}));
  EXPECT_EQ(loop.vertex_count(), 1U);
  EXPECT_EQ(loop.edge_count(), 0U);
}

TEST(EliminationOrder, SingleVertex) {
  PrimalGraph g({"v"});
  for (Heuristic h : kAllHeuristics) EXPECT_EQ(elimination_order(g, h, 0), std::vector<Vertex>{0});
}

TEST(EliminationOrder, PathMinDegreeLexicographic) {
  EXPECT_EQ(elimination_order(path_abc(), Heuristic::min_degree, 0), (std::vector<Vertex>{0, 1, 2}));
}

TEST(EliminationOrder, SeedZeroIsDeterministicAndSeedsAreReproducible) {
  std::mt19937_64 rng(5);
  const auto g = testing::random_graph(rng, 30, 0.2);
  for (Heuristic h : kAllHeuristics) {
    EXPECT_EQ(elimination_order(g, h, 0), elimination_order(g, h, 0));
    EXPECT_EQ(elimination_order(g, h, 17), elimination_order(g, h, 17));
  }
}

TEST(EliminationOrder, ParseHeuristic) {
  EXPECT_EQ(parse_heuristic("min-fill"), Heuristic::min_fill);
  EXPECT_EQ(parse_heuristic("min-degree"), Heuristic::min_degree);
  EXPECT_EQ(parse_heuristic("mcs"), Heuristic::mcs);
  EXPECT_THROW((void)parse_heuristic("best"), std::invalid_argument);
}

TEST(Decompose, RunningExampleHasWidthTwo) {
  const auto g = primal_graph(testing::example1());
  const auto td = decompose(g, elimination_order(g, Heuristic::min_fill, 0));
  EXPECT_TRUE(validate(td, g).empty());
  EXPECT_EQ(td.width(), 2);
}

TEST(Decompose, SingleVertexAndEmptyGraph) {
  PrimalGraph one({"v"});
  const auto td = decompose(one, {0});
  ASSERT_EQ(td.nodes.size(), 1U);
  EXPECT_EQ(td.nodes[0].bag, Bag{0});
  EXPECT_EQ(td.width(), 0);

  const auto none = decompose(PrimalGraph{}, {});
  ASSERT_EQ(none.nodes.size(), 1U);
  EXPECT_TRUE(none.nodes[0].bag.empty());
  EXPECT_TRUE(validate(none, PrimalGraph{}).empty());
}

TEST(Decompose, CompleteGraphK4) {
  const auto g = complete(4);
  std::vector<Vertex> order{0, 1, 2, 3};
  do {
    const auto td = decompose(g, order);
    EXPECT_TRUE(validate(td, g).empty());
    EXPECT_EQ(td.width(), 3);
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST(Decompose, RejectsNonPermutations) {
  const auto g = path_abc();
  EXPECT_THROW((void)decompose(g, {0, 1}), std::invalid_argument);
  EXPECT_THROW((void)decompose(g, {0, 1, 1}), std::invalid_argument);
  EXPECT_THROW((void)decompose(g, {0, 1, 7}), std::invalid_argument);
}

TEST(Decompose, DisconnectedComponentsFormOneTree) {
  PrimalGraph g({"a", "b", "c", "d", "e"});
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  const auto td = decompose(g, elimination_order(g, Heuristic::min_degree, 0));
  EXPECT_TRUE(validate(td, g).empty());
  EXPECT_EQ(td.nodes.size(), 5U);
}

TEST(Validate, HandMadeDecompositionIsValid) {
  const auto g = primal_graph(testing::example1());
  const auto td = testing::example1_decomposition(g);
  EXPECT_TRUE(validate(td, g).empty());
  EXPECT_EQ(td.width(), 2);
}

TEST(Validate, MissingEdgeIsReported) {
  const auto g = primal_graph(testing::example1());
  auto td = testing::example1_decomposition(g);
  td.nodes[3].bag = {g.index("a")};
  const auto v = validate(td, g);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0], "edge coverage: edge {a,b} is in no bag");
}

TEST(Validate, DisconnectedOccurrencesAreReported) {
  const auto g = primal_graph(testing::example1());
  auto td = testing::example1_decomposition(g);
  td.nodes[2].bag = {g.index("a"), g.index("d"), g.index("e")};
  const auto v = validate(td, g);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0], "connectedness: bags containing a are not connected");
}

TEST(Validate, UncoveredVertexAndBrokenTree) {
  const auto g = primal_graph(testing::example1());
  auto td = testing::example1_decomposition(g);
  td.nodes[4].bag = {g.index("e"), g.index("g")};
  auto v = validate(td, g);
  EXPECT_NE(std::find(v.begin(), v.end(), "cover: vertex f is in no bag"), v.end());

  td = testing::example1_decomposition(g);
  td.nodes[3].children.push_back(0);
  EXPECT_FALSE(validate(td, g).empty());
}

TEST(WriteText, IndentedDump) {
  const auto g = primal_graph(testing::example1());
  std::ostringstream out;
  write_text(out, testing::example1_decomposition(g), g.names());
  EXPECT_EQ(out.str(), "0: {c,d}\n  1: {b,c}\n    3: {a,b}\n  2: {d,e}\n    4: {e,f,g}\n");
}

// Every heuristic and seed yields a valid decomposition with at most one
// node per vertex.
TEST(DecompositionProperties, RandomGraphsAreValid) {
  std::mt19937_64 rng(31337);
  for (int round = 0; round < 80; ++round) {
    const std::size_t n = 1 + rng() % 50;
    const double p = std::vector<double>{0.05, 0.1, 0.2, 0.4}[round % 4];
    const auto g = testing::random_graph(rng, n, p);
    for (Heuristic h : kAllHeuristics) {
      for (std::uint64_t seed : {0ULL, 1ULL, 12345ULL}) {
        const auto order = elimination_order(g, h, seed);
        ASSERT_TRUE(is_permutation_of_vertices(order, n));
        const auto td = decompose(g, order);
        ASSERT_TRUE(validate(td, g).empty()) << to_string(h) << " seed " << seed;
        ASSERT_LE(td.nodes.size(), std::max<std::size_t>(n, 1));
      }
    }
  }
}

std::size_t brute_force_clique_number(const PrimalGraph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t best = n == 0 ? 0 : 1;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best) continue;
    bool clique = true;
    for (Vertex u = 0; u < n && clique; ++u) {
      if (!(mask & (1U << u))) continue;
      for (Vertex v = u + 1; v < n; ++v) {
        if ((mask & (1U << v)) && !g.adjacent(u, v)) {
          clique = false;
          break;
        }
      }
    }
    if (clique) best = size;
  }
  return best;
}

TEST(DecompositionProperties, WidthBoundedBelowByPlantedClique) {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 6 + rng() % 15;
    auto g = testing::random_graph(rng, n, 0.15);
    const std::size_t k = 3 + rng() % 4;
    for (Vertex u = 0; u < k; ++u) {
      for (Vertex v = u + 1; v < k; ++v) g.add_edge(u, v);
    }
    const auto omega = brute_force_clique_number(g);
    ASSERT_GE(omega, k);
    for (Heuristic h : kAllHeuristics) {
      const auto td = decompose(g, elimination_order(g, h, 0));
      EXPECT_GE(td.width(), static_cast<int>(omega) - 1);
    }
  }
}

TEST(DecompositionProperties, BestHeuristicWidthOnRunningExample) {
  const auto g = primal_graph(testing::example1());
  int best = 1 << 30;
  for (Heuristic h : kAllHeuristics) best = std::min(best, decompose(g, elimination_order(g, h, 0)).width());
  EXPECT_EQ(best, 2);
}

}  // namespace
}  // namespace dynpartix
