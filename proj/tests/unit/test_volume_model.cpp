#include "plexdist/distribute.hpp"
#include "plexdist/meshgen.hpp"
#include "plexdist/volume_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace plexdist;

TEST(VolumeModel, BenchmarkCounts) {
  const auto v = predict_volumes({12582912, 25264128, 14827904, 2146689});
  EXPECT_EQ(v.partition, 1096432660u);
  EXPECT_EQ(v.migration, 3069225024u);
}

TEST(VolumeModel, SingleCell) {
  const auto v = predict_volumes({1, 0, 0, 0});
  EXPECT_EQ(v.sf, 4u);
  EXPECT_EQ(v.cones, 16u);
  EXPECT_EQ(v.coordinates, 0u);
}

TEST(VolumeModel, ZeroMeshPredictsNothing) {
  const auto v = predict_volumes({});
  EXPECT_EQ(v.partition, 0u);
  EXPECT_EQ(v.migration, 0u);
}

TEST(VolumeModel, TermsMatchHandEvaluationOnRandomInputs) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> pick(0, 1u << 24);
  for (int k = 0; k < 200; ++k) {
    const std::uint64_t nc = pick(rng), nf = pick(rng), ne = pick(rng), nv = pick(rng);
    const std::uint64_t n = nc + nf + ne + nv;
    const auto v = predict_volumes({nc, nf, ne, nv});
    EXPECT_EQ(v.sf, 4 * n);
    EXPECT_EQ(v.inversion, 12 * n);
    EXPECT_EQ(v.stratify, 8 * n);
    EXPECT_EQ(v.partition, v.inversion + v.stratify);
    EXPECT_EQ(v.cones, 4 * (4 * nc + 3 * nf + 2 * ne));
    EXPECT_EQ(v.orientations, v.cones);
    EXPECT_EQ(v.section, 20 * n);
    EXPECT_EQ(v.topology, v.cones + v.orientations + v.section);
    EXPECT_EQ(v.coordinates, 32 * nv);
    EXPECT_EQ(v.markers, 12 * n);
    EXPECT_EQ(v.migration, v.topology + v.coordinates + v.markers);
  }
}

TEST(VolumeModel, StageLookup) {
  const auto v = predict_volumes({5, 6, 7, 8});
  EXPECT_EQ(predicted_for_stage(v, "partition"), v.partition);
  EXPECT_EQ(predicted_for_stage(v, "migration"), v.migration);
  EXPECT_EQ(predicted_for_stage(v, "overlap"), 0u);
}

TEST(CompareVolumes, RelativeErrorAndMismatch) {
  auto c = compare_volumes(100, 120);
  EXPECT_DOUBLE_EQ(c.relative_error, 0.2);
  EXPECT_FALSE(c.mismatch);
  c = compare_volumes(0, 5);
  EXPECT_TRUE(c.mismatch);
  EXPECT_TRUE(std::isinf(c.relative_error));
  c = compare_volumes(0, 0);
  EXPECT_FALSE(c.mismatch);
  EXPECT_EQ(c.relative_error, 0.0);
}

TEST(CompareVolumes, DoubletReportIsProduced) {
  CommWorld world(2);
  const auto serial = gen_doublet();
  distribute(world, serial, ChunkPartitioner{});
  const std::vector<std::string> stages{"partition", "migration"};
  const auto c = compare_volumes(predict_volumes(stratum_counts(serial)), world, stages);
  EXPECT_GT(c.measured, 0u);
  EXPECT_EQ(c.measured,
            world.ledger().total_sent("partition") + world.ledger().total_sent("migration"));
  EXPECT_TRUE(std::isfinite(c.relative_error));
}
