#include "plexdist/error.hpp"
#include "plexdist/meshgen.hpp"
#include "plexdist/partition.hpp"

#include <gtest/gtest.h>

#include <deque>

using namespace plexdist;
namespace d = plexdist::doublet;

namespace {

bool connected(const CellGraph& g, const std::vector<int>& parts, int k) {
  std::vector<char> seen(g.ncells(), 0);
  std::int32_t start = -1, total = 0;
  for (std::int32_t c = 0; c < g.ncells(); ++c)
    if (parts[c] == k) {
      ++total;
      if (start < 0)
        start = c;
    }
  if (start < 0)
    return true;
  std::deque<std::int32_t> q{start};
  seen[start] = 1;
  std::int32_t reached = 0;
  while (!q.empty()) {
    auto c = q.front();
    q.pop_front();
    ++reached;
    for (auto n : g.adjacent(c))
      if (parts[n] == k && !seen[n]) {
        seen[n] = 1;
        q.push_back(n);
      }
  }
  return reached == total;
}

} // namespace

TEST(CellGraph, DoubletAndBox) {
  const auto g = cell_graph(gen_doublet());
  EXPECT_EQ(g.ncells(), 2);
  EXPECT_EQ(std::vector<std::int32_t>(g.adjacent(0).begin(), g.adjacent(0).end()),
            std::vector<std::int32_t>{1});
  const auto b = cell_graph(gen_box_2d(4));
  // Interior edges: total edges minus boundary edges.
  EXPECT_EQ(b.neighbors.size(), 2u * (56 - 16));
  const auto t = cell_graph(gen_box_3d(2));
  EXPECT_EQ(t.neighbors.size(), 2u * (box_3d_counts(2).faces - 6 * 2 * 2 * 2));
}

TEST(Chunk, ContiguousBlocks) {
  const auto g = cell_graph(gen_doublet());
  EXPECT_EQ(ChunkPartitioner{}.partition(g, 2, {}), (std::vector<int>{0, 1}));
  const auto lbl = partition(gen_doublet(), 2, ChunkPartitioner{});
  EXPECT_EQ(lbl.stratum(0), std::vector<PointId>{d::kA});
  EXPECT_EQ(lbl.stratum(1), std::vector<PointId>{d::kB});
  const auto b = cell_graph(gen_box_2d(3));
  const auto p = ChunkPartitioner{}.partition(b, 4, {});
  for (std::int32_t i = 0; i < b.ncells(); ++i)
    EXPECT_EQ(p[i], i * 4 / 18);
}

TEST(Relabeled, ReproducesSwappedDoubletPartition) {
  RelabeledPartitioner swap(std::make_shared<ChunkPartitioner>(), {1, 0});
  const auto lbl = partition(gen_doublet(), 2, swap);
  EXPECT_EQ(lbl.stratum(0), std::vector<PointId>{d::kB});
  EXPECT_EQ(lbl.stratum(1), std::vector<PointId>{d::kA});
  EXPECT_THROW(RelabeledPartitioner(std::make_shared<ChunkPartitioner>(), {0, 0}), Error);
}

TEST(AllMethods, SinglePartAndMoreParts) {
  const auto m = gen_box_2d(2);
  for (const auto* name : {"chunk", "random", "greedy-bfs"}) {
    auto part = make_partitioner(name, 5);
    const auto lbl = partition(m, 1, *part);
    EXPECT_EQ(lbl.stratum(0).size(), 8u) << name;
    // More parts than cells is allowed.
    const auto many = part->partition(cell_graph(m), 12, {});
    for (int p : many)
      EXPECT_TRUE(p >= 0 && p < 12);
    EXPECT_THROW(part->partition(cell_graph(m), 0, {}), Error);
  }
  EXPECT_THROW(make_partitioner("metis"), Error);
}

TEST(Random, DeterministicPerSeed) {
  const auto g = cell_graph(gen_box_2d(8));
  RandomPartitioner a(1), b(1), c(2);
  EXPECT_EQ(a.partition(g, 4, {}), b.partition(g, 4, {}));
  EXPECT_NE(a.partition(g, 4, {}), c.partition(g, 4, {}));
  const auto sizes = part_sizes(a.partition(g, 4, {}), 4);
  std::int64_t total = 0;
  for (auto s : sizes) {
    EXPECT_GT(s, 0);
    total += s;
  }
  EXPECT_EQ(total, 128);
}

TEST(GreedyBfs, BalancedConnectedRegions) {
  const auto g = cell_graph(gen_box_2d(4));
  const auto p = GreedyBfsPartitioner{}.partition(g, 2, {});
  EXPECT_EQ(part_sizes(p, 2), (std::vector<std::int64_t>{16, 16}));
  EXPECT_TRUE(connected(g, p, 0));
  EXPECT_TRUE(connected(g, p, 1));

  const auto g3 = cell_graph(gen_box_3d(4));
  const auto p3 = GreedyBfsPartitioner{}.partition(g3, 5, {});
  EXPECT_EQ(part_sizes(p3, 5), (std::vector<std::int64_t>{77, 77, 77, 77, 76}));
  // Greedy growth beats a random assignment on edge cut by a wide margin.
  EXPECT_LT(edge_cut(g3, p3) * 3, edge_cut(g3, RandomPartitioner(0).partition(g3, 5, {})));
}

TEST(GreedyBfs, KeepsAnExactlyBalancedCurrentAssignment) {
  const auto g = cell_graph(gen_box_2d(4));
  const auto first = GreedyBfsPartitioner{}.partition(g, 4, {});
  EXPECT_EQ(GreedyBfsPartitioner{}.partition(g, 4, first), first);
  const auto chunk = ChunkPartitioner{}.partition(g, 4, {});
  EXPECT_EQ(GreedyBfsPartitioner{}.partition(g, 4, chunk), chunk);
  const auto rnd = RandomPartitioner(1).partition(g, 4, {});
  EXPECT_NE(GreedyBfsPartitioner{}.partition(g, 4, rnd), rnd);
}

TEST(GreedyBfs, DisconnectedGraph) {
  const auto g = cell_graph_from_lists({{1}, {0}, {3}, {2}, {}});
  const auto p = GreedyBfsPartitioner{}.partition(g, 2, {});
  EXPECT_EQ(part_sizes(p, 2), (std::vector<std::int64_t>{3, 2}));
}

TEST(Identity, KeepsCurrentOrZero) {
  const auto g = cell_graph(gen_box_2d(1));
  EXPECT_EQ(IdentityPartitioner{}.partition(g, 3, {}), (std::vector<int>{0, 0}));
  const std::vector<int> cur{2, 1};
  EXPECT_EQ(IdentityPartitioner{}.partition(g, 3, cur), cur);
}

TEST(Metrics, EdgeCutAndSizes) {
  const auto g = cell_graph(gen_doublet());
  EXPECT_EQ(edge_cut(g, std::vector<int>{0, 1}), 1);
  EXPECT_EQ(edge_cut(g, std::vector<int>{1, 1}), 0);
  EXPECT_EQ(part_sizes(std::vector<int>{1, 1}, 3), (std::vector<std::int64_t>{0, 2, 0}));
}
