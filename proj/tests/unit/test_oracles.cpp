#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace oracle;

namespace {

// Doublet by hand: A=0 B=1, vertices 2..5, edges a..e = 6..10.
Dag doublet() {
  return Dag::from_cones({{6, 7, 10}, {8, 9, 10}, {}, {}, {}, {}, {2, 3}, {2, 4}, {3, 5},
                          {5, 4}, {3, 4}});
}

} // namespace

TEST(Oracle, DoubletQueries) {
  const auto g = doublet();
  EXPECT_EQ(closure(g, 0), (Set{0, 2, 3, 4, 6, 7, 10}));
  EXPECT_EQ(star(g, 3), (Set{3, 0, 1, 6, 8, 10}));
  EXPECT_EQ(support(g, 10), (Set{0, 1}));
  EXPECT_EQ(adjacency(g, 6, plexdist::Adjacency::kFV), (Set{6, 0, 7, 10, 8}));
  EXPECT_EQ(adjacency(g, 2, plexdist::Adjacency::kFE).size(), 7u);
  EXPECT_EQ(depths(g), (std::vector<int>{2, 2, 0, 0, 0, 0, 1, 1, 1, 1, 1}));
  EXPECT_EQ(vertices_of(g, 1), (Set{3, 4, 5}));
}

TEST(Oracle, RestrictedStar) {
  const auto g = doublet();
  const Set within{0, 2, 3, 4, 6, 7, 10};
  EXPECT_EQ(star(g, 3, &within), (Set{3, 0, 6, 10}));
  EXPECT_EQ(adjacency(g, 10, plexdist::Adjacency::kFE, &within), within);
}

TEST(Oracle, ChunkCells) {
  const auto parts = chunk_cells(5, 2);
  EXPECT_EQ(parts[0], (Set{0, 1, 2}));
  EXPECT_EQ(parts[1], (Set{3, 4}));
}

TEST(Oracle, DoubletOverlap) {
  const auto g = doublet();
  const auto out = overlap_sets(g, {{0}, {1}}, 1, plexdist::Adjacency::kFE);
  EXPECT_EQ(out[0].size(), 11u);
  EXPECT_EQ(out[1].size(), 11u);
  EXPECT_EQ(overlap_sets_global_fe(g, {{0}, {1}}), out);
  const auto none = overlap_sets(g, {{0, 1}, {}}, 2, plexdist::Adjacency::kFV);
  EXPECT_TRUE(none[1].empty());
}

TEST(Oracle, SimplexCounting) {
  const auto tri = enumerate_simplices(box_triangles(1), 2);
  EXPECT_EQ(tri, (SimplexCounts{2, 0, 5, 4, 2}));
  EXPECT_EQ(tri.euler(), 1);
  const auto tets = freudenthal_tets(1);
  EXPECT_EQ(tets.size(), 6u);
  const auto c = enumerate_simplices(tets, 3);
  EXPECT_EQ(c, (SimplexCounts{6, 18, 19, 8, 3}));
  EXPECT_EQ(c.euler(), 1);
  // Every Freudenthal tet of the unit cube contains both diagonal corners.
  for (const auto& t : tets) {
    EXPECT_EQ(t.front(), 0);
    EXPECT_EQ(t.back(), 7);
  }
}
