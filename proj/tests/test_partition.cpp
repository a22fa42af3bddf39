#include "locbound/partition.hpp"
#include "locbound/random.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace locbound;

namespace {

EmbeddedGraph sparse_points(std::size_t count, double box, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, box);
  std::vector<std::array<double, 3>> pts;
  while (pts.size() < count) {
    const std::array<double, 3> p{u(rng), u(rng), 0.0};
    const bool far = std::all_of(pts.begin(), pts.end(), [&](const auto& q) { return detail::distance(p, q) >= 1.0; });
    if (far) pts.push_back(p);
  }
  Labels labels;
  for (std::size_t i = 0; i < count; ++i) labels.push_back("p" + std::to_string(i));
  EmbeddedGraph out{ConnectivityGraph(labels), Embedding{2, 2.0, pts}};
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (detail::distance(pts[i], pts[j]) <= 2.0) out.graph.add_edge(i, j);
    }
  }
  return out;
}

}  // namespace

TEST(GridPartition, FourByFourIntoSquares) {
  const auto g = full_grid(2, 4);
  const auto p = grid_partition(g.graph, g.embedding, 4);
  ASSERT_EQ(p.size(), 4u);
  std::set<Labels> blocks(p.blocks.begin(), p.blocks.end());
  EXPECT_TRUE(blocks.count({"0", "1", "4", "5"}));
  EXPECT_TRUE(blocks.count({"10", "11", "14", "15"}));
  for (auto b : p.boundary_sizes) EXPECT_EQ(b, 7u);  // corner vertex is interior
}

TEST(GridPartition, LargeLambdaGivesOneBlock) {
  const auto g = full_grid(2, 5);
  const auto p = grid_partition(g.graph, g.embedding, 25);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.blocks[0].size(), 25u);
  EXPECT_EQ(p.boundary_sizes[0], 0u);
  EXPECT_EQ(grid_partition(g.graph, g.embedding, 1000).size(), 1u);
}

TEST(GridPartition, SingleVertex) {
  const auto g = full_grid(3, 1);
  const auto p = grid_partition(g.graph, g.embedding, 3);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.blocks[0], Labels{"0"});
}

TEST(GridPartition, RejectsBadLambda) {
  const auto g = full_grid(1, 4);
  EXPECT_THROW(grid_partition(g.graph, g.embedding, 0.5), InputError);
}

TEST(GridPartition, LambdaOneGivesSingletons) {
  const auto g = full_grid(2, 6);
  const auto p = grid_partition(g.graph, g.embedding, 1);
  ASSERT_EQ(p.size(), 36u);
  for (std::size_t b = 0; b < p.size(); ++b) {
    const auto v = g.graph.index(p.blocks[b][0]);
    EXPECT_EQ(p.boundary_sizes[b], 1 + g.graph.neighbors(v).size());
  }
  EXPECT_TRUE(check_guarantees(g.graph, g.embedding, p, 1, true).ok());
}

TEST(GridPartition, OverfullCellsAreSplit) {
  // Violates unit spacing: all points on top of each other.
  ConnectivityGraph g({"a", "b", "c", "d", "e"});
  Embedding e{1, 1.0, std::vector<std::array<double, 3>>(5, {0, 0, 0})};
  const auto p = grid_partition(g, e, 2);
  const auto r = check_guarantees(g, e, p, 2, false);
  EXPECT_TRUE(r.size_ok);
  EXPECT_TRUE(r.cover_ok);
}

TEST(Guarantees, ThirtyTwoGrid) {
  const auto g = full_grid(2, 32);
  const auto p = grid_partition(g.graph, g.embedding, 16);
  const auto r = check_guarantees(g.graph, g.embedding, p, 16, true);
  EXPECT_TRUE(r.cover_ok);
  EXPECT_TRUE(r.size_ok);
  EXPECT_TRUE(r.boundary_ok);
  ASSERT_TRUE(r.count_ok.has_value());
  EXPECT_TRUE(*r.count_ok);
  EXPECT_EQ(p.size(), 64u);
}

TEST(Guarantees, SparsePointsSkipCountBound) {
  const auto g = sparse_points(120, 25.0, 17);
  ASSERT_TRUE(validate_embedding(g.graph, g.embedding).ok());
  for (double lambda : {1.0, 3.0, 8.0, 20.0}) {
    const auto p = grid_partition(g.graph, g.embedding, lambda);
    const auto r = check_guarantees(g.graph, g.embedding, p, lambda, false);
    EXPECT_TRUE(r.cover_ok);
    EXPECT_TRUE(r.size_ok);
    EXPECT_TRUE(r.boundary_ok);
    EXPECT_FALSE(r.count_ok.has_value());
    EXPECT_EQ(r.count_note, "not applicable (sparse)");
  }
}

TEST(Guarantees, DetectsBrokenPartitions) {
  const auto g = full_grid(1, 4);
  Partition p{{{"0", "1"}, {"1", "2", "3"}}, {1, 1}, false};
  EXPECT_FALSE(check_guarantees(g.graph, g.embedding, p, 4, true).cover_ok);
  Partition q{{{"0", "1", "2", "3"}}, {0}, false};
  EXPECT_FALSE(check_guarantees(g.graph, g.embedding, q, 2, true).size_ok);
}

TEST(Guarantees, FullGridsAllLambdas) {
  for (const auto& [dim, side] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 700}, {2, 24}, {3, 9}}) {
    const auto g = full_grid(dim, side);
    const auto m = static_cast<double>(g.graph.size());
    for (double lambda = 1; lambda <= 2 * m; lambda *= 2) {
      const auto p = grid_partition(g.graph, g.embedding, lambda);
      const auto r = check_guarantees(g.graph, g.embedding, p, lambda, true);
      EXPECT_TRUE(r.ok()) << "D=" << dim << " λ=" << lambda;
      EXPECT_TRUE(r.count_ok.has_value()) << "D=" << dim << " λ=" << lambda;
    }
  }
}

TEST(InducedPartition, Intersections) {
  const auto g = full_grid(2, 4);
  const auto p = grid_partition(g.graph, g.embedding, 4);
  const auto same = induced_partition(p, g.graph.vertices());
  EXPECT_EQ(same.blocks, p.blocks);

  const auto dropped = induced_partition(p, {"0", "1", "15"});
  ASSERT_EQ(dropped.size(), 2u);
  EXPECT_EQ(dropped.boundary_sizes, (std::vector<std::size_t>{7, 7}));

  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    Labels subset;
    for (const auto& v : g.graph.vertices()) {
      if (random::uniform(rng) < 0.4) subset.push_back(v);
    }
    const auto ind = induced_partition(p, subset);
    std::size_t total = 0;
    for (const auto& b : ind.blocks) total += b.size();
    EXPECT_EQ(total, subset.size());
    for (const auto& b : ind.blocks) EXPECT_LE(b.size(), 4u);
  }
}

TEST(GraphFile, Parses) {
  const auto g = parse_graph_text(R"(# three points on a line
dim 2
c 1.5
point a 0 0
point b 1.5 0
point c 3 0   # end
edge a b
edge b c
)");
  EXPECT_EQ(g.graph.size(), 3u);
  EXPECT_EQ(g.graph.edge_count(), 2u);
  EXPECT_EQ(g.embedding.dimension, 2u);
  EXPECT_EQ(g.embedding.c, 1.5);
  EXPECT_EQ(g.embedding.coords[1][0], 1.5);
  EXPECT_TRUE(validate_embedding(g.graph, g.embedding).ok());
}

TEST(GraphFile, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse_graph_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("point a 0\n"), 1u);
  EXPECT_EQ(line_of("dim 4\n"), 1u);
  EXPECT_EQ(line_of("dim 2\npoint a 0\n"), 2u);
  EXPECT_EQ(line_of("dim 1\npoint a 0\npoint a 2\n"), 3u);
  EXPECT_EQ(line_of("dim 1\npoint a 0\nedge a b\n"), 3u);
  EXPECT_EQ(line_of("dim 1\npoint a x\n"), 2u);
  EXPECT_EQ(line_of("dim 1\nc -1\n"), 2u);
  EXPECT_EQ(line_of("dim 1\nbogus\n"), 2u);
  EXPECT_EQ(line_of("\n\n"), 2u);
}
