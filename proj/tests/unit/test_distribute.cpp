#include "oracles.hpp"

#include "plexdist/distribute.hpp"
#include "plexdist/invariants.hpp"
#include "plexdist/meshgen.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace plexdist;
namespace d = plexdist::doublet;

namespace {

std::set<PointId> gids(const DistributedMesh& m, int r) {
  return {m.global[r].begin(), m.global[r].end()};
}

std::int64_t owned_cells(const DistributedMesh& m, int r) {
  std::vector<char> ghost(m.local[r].size(), 0);
  for (PointId i = 0; i < m.point_sf[r].nleaves(); ++i)
    ghost[m.point_sf[r].leaf(i)] = 1;
  const auto [cs, ce] = m.local[r].depth_stratum(m.local[r].dimension());
  std::int64_t n = 0;
  for (PointId c = cs; c < ce; ++c)
    n += !ghost[c];
  return n;
}

} // namespace

TEST(PartitionLabel, ClosureAndOwnership) {
  const auto dbl = gen_doublet();
  Label cells;
  cells.insert(0, d::kA);
  cells.insert(1, d::kB);
  const auto closed = partition_label_closure(dbl, cells);
  EXPECT_EQ(closed.stratum(0), (std::vector<PointId>{0, 2, 3, 4, 6, 7, 10}));
  EXPECT_EQ(closed.stratum(1), (std::vector<PointId>{1, 3, 4, 5, 8, 9, 10}));
  const auto owned = partition_label_ownership(closed);
  EXPECT_EQ(owned.stratum(0), (std::vector<PointId>{0, 2, 6, 7}));
  EXPECT_EQ(owned.stratum_size(1), 7u);
}

TEST(PartitionLabel, CreateSfOrdersByOwner) {
  std::vector<Label> mig(2);
  mig[1].insert(1, 0);
  mig[1].insert(0, 5);
  mig[1].insert(0, 2);
  const std::vector<PointId> nroots{6, 1};
  auto sf = partition_label_create_sf(mig, nroots);
  ASSERT_EQ(sf[1].nleaves(), 3);
  EXPECT_EQ(sf[1].remote(0), (RemotePoint{0, 2}));
  EXPECT_EQ(sf[1].remote(1), (RemotePoint{0, 5}));
  EXPECT_EQ(sf[1].remote(2), (RemotePoint{1, 0}));
  mig[0].insert(1, 4);
  EXPECT_THROW(partition_label_create_sf(mig, nroots), Error);
}

TEST(PartitionLabel, InvertRejectsBadValues) {
  CommWorld world(2);
  std::vector<Label> lbl(2);
  lbl[0].insert(2, 0);
  DistributedSF none{StarForest(1, {}, {}), StarForest(0, {}, {})};
  EXPECT_THROW(partition_label_invert(world, "x", lbl, none, sf_process_graph(2)), Error);
}

TEST(Distribute, SingleRankIsIdentity) {
  CommWorld world(1);
  const auto m = gen_box_2d(3);
  const auto out = distribute(world, m, ChunkPartitioner{});
  EXPECT_EQ(out.point_sf[0].nleaves(), 0);
  EXPECT_EQ(out.local[0].size(), m.size());
  EXPECT_TRUE(check_distributed(out, &m).empty());
  // Chunk on one rank keeps serial order, so the mesh is unchanged.
  EXPECT_EQ(out.local[0], m);
}

TEST(Distribute, ChunkOwnedCellsCoverTheMesh) {
  CommWorld world(4);
  const auto m = gen_box_3d(4);
  const auto out = distribute(world, m, GreedyBfsPartitioner{});
  std::int64_t total = 0;
  std::set<PointId> all;
  for (int r = 0; r < 4; ++r) {
    total += owned_cells(out, r);
    const auto g = gids(out, r);
    all.insert(g.begin(), g.end());
    EXPECT_GT(owned_cells(out, r), 0);
  }
  EXPECT_EQ(total, 384);
  EXPECT_EQ(static_cast<PointId>(all.size()), m.size());
  EXPECT_TRUE(check_distributed(out, &m).empty());
}

TEST(Distribute, SwappedPartsSwapRanks) {
  const auto dbl = gen_doublet();
  CommWorld w1(2), w2(2);
  const auto a = distribute(w1, dbl, ChunkPartitioner{});
  const auto b = distribute(w2, dbl, RelabeledPartitioner(std::make_shared<ChunkPartitioner>(),
                                                          {1, 0}));
  EXPECT_EQ(gids(a, 0), gids(b, 1));
  EXPECT_EQ(gids(a, 1), gids(b, 0));
  // Shared points go to rank 1 in both runs.
  EXPECT_EQ(a.point_sf[0].nleaves(), 3);
  EXPECT_EQ(b.point_sf[0].nleaves(), 3);
  EXPECT_EQ(a.point_sf[1].nleaves(), 0);
}

TEST(Distribute, LocalChartsAreCanonical) {
  CommWorld world(3);
  const auto m = gen_box_3d(2);
  const auto out = distribute(world, m, ChunkPartitioner{});
  for (const auto& p : out.local)
    EXPECT_TRUE(p.canonically_ordered());
}

TEST(Distribute, LedgerIsDeterministic) {
  const auto m = gen_box_2d(6);
  CommWorld w1(3), w2(3);
  const auto a = distribute(w1, m, RandomPartitioner(5), {1, Adjacency::kFE});
  const auto b = distribute(w2, m, RandomPartitioner(5), {1, Adjacency::kFE});
  EXPECT_EQ(a.local, b.local);
  EXPECT_EQ(a.point_sf, b.point_sf);
  for (const auto& s : w1.ledger().stages())
    EXPECT_EQ(w1.ledger().stage_volumes(s), w2.ledger().stage_volumes(s)) << s;
  EXPECT_EQ(w1.ledger().stages(), w2.ledger().stages());
}

TEST(Distribute, StagesAreRecorded) {
  CommWorld world(2);
  distribute(world, gen_doublet(), ChunkPartitioner{}, {1, Adjacency::kFV});
  const auto stages = world.ledger().stages();
  for (auto s : {stage::kPartition, stage::kMigration, stage::kOverlap})
    EXPECT_NE(std::find(stages.begin(), stages.end(), std::string(s)), stages.end()) << s;
  EXPECT_GT(world.ledger().total_sent(stage::kMigration), 0u);
}

TEST(Distribute, NegativeOverlapRejected) {
  CommWorld world(2);
  EXPECT_THROW(distribute(world, gen_doublet(), ChunkPartitioner{}, {-1, Adjacency::kFE}), Error);
}

TEST(Distribute, MoreRanksThanCells) {
  CommWorld world(3);
  const auto dbl = gen_doublet();
  const auto out = distribute(world, dbl, ChunkPartitioner{});
  EXPECT_EQ(out.local[0].size() + out.local[1].size() + out.local[2].size(), 14);
  EXPECT_TRUE(check_distributed(out, &dbl).empty());
}

TEST(Redistribute, IdentityKeepsTheMesh) {
  const auto m = gen_box_2d(4);
  CommWorld w1(3);
  const auto first = distribute(w1, m, ChunkPartitioner{});
  CommWorld w2(3);
  const auto again = redistribute(w2, first, IdentityPartitioner{});
  for (int r = 0; r < 3; ++r) {
    EXPECT_EQ(again.mesh.local[r].size(), first.local[r].size());
    EXPECT_EQ(again.mesh.local[r].num_cells(), first.local[r].num_cells());
    // New global ids refer to the numbering of `first`; map them to serial.
    std::set<PointId> serial;
    for (auto g : again.mesh.global[r]) {
      for (int s = 0; s < 3; ++s) {
        auto it = std::find(again.numbering.global[s].begin(), again.numbering.global[s].end(), g);
        if (it != again.numbering.global[s].end()) {
          serial.insert(first.global[s][it - again.numbering.global[s].begin()]);
          break;
        }
      }
    }
    EXPECT_EQ(serial, gids(first, r));
  }
  EXPECT_TRUE(check_distributed(again.mesh).empty());
  const auto stages = w2.ledger().stages();
  EXPECT_EQ(stages, std::vector<std::string>{std::string(stage::kRedistribution)});
}

TEST(Redistribute, GreedyImprovesRandomBalance) {
  const auto m = gen_box_2d(8);
  CommWorld w1(4);
  const auto rnd = distribute(w1, m, RandomPartitioner(1));
  CommWorld w2(4);
  const auto bal = redistribute(w2, rnd, GreedyBfsPartitioner{});
  std::vector<std::int64_t> before, after;
  for (int r = 0; r < 4; ++r) {
    before.push_back(owned_cells(rnd, r));
    after.push_back(owned_cells(bal.mesh, r));
  }
  auto ratio = [](const std::vector<std::int64_t>& v) {
    return static_cast<double>(*std::max_element(v.begin(), v.end())) /
           std::max<std::int64_t>(1, *std::min_element(v.begin(), v.end()));
  };
  EXPECT_EQ(std::accumulate(after.begin(), after.end(), std::int64_t{0}), 128);
  EXPECT_LE(ratio(after), ratio(before));
  EXPECT_EQ(*std::max_element(after.begin(), after.end()), 32);
  EXPECT_TRUE(check_distributed(bal.mesh).empty());
}

TEST(Redistribute, GreedyIsIdempotentOnOwnership) {
  const auto m = gen_box_2d(6);
  CommWorld w1(3);
  const auto first = distribute(w1, m, GreedyBfsPartitioner{});
  CommWorld w2(3);
  const auto again = redistribute(w2, first, GreedyBfsPartitioner{});
  for (int r = 0; r < 3; ++r)
    EXPECT_EQ(owned_cells(again.mesh, r), owned_cells(first, r));
}

TEST(Redistribute, RankCountMustMatch) {
  CommWorld w1(2);
  const auto first = distribute(w1, gen_doublet(), ChunkPartitioner{});
  CommWorld w2(3);
  EXPECT_THROW(redistribute(w2, first, ChunkPartitioner{}), Error);
}
