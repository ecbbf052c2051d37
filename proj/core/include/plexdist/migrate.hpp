#pragma once

#include "plexdist/comm.hpp"
#include "plexdist/plex.hpp"
#include "plexdist/section.hpp"
#include "plexdist/star_forest.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace plexdist {

struct SectionMigration {
  /// Per rank, the root offset of each leaf, in leaf order.
  std::vector<std::vector<std::int32_t>> remote_offsets;
  std::vector<Section> target;
};

/// Target chart is [min leaf, max leaf + 1); dofs and root offsets travel
/// in two broadcasts over `sf`.
SectionMigration distribute_section(CommWorld& world, std::string_view stage,
                                    std::span<const StarForest> sf,
                                    std::span<const Section> source);

struct MigratedBytes {
  std::vector<Section> section;
  std::vector<Bytes> data;
};

/// Moves `width`-byte items laid out by `source` from roots to leaves of
/// `sf_point`.
MigratedBytes migrate_data_bytes(CommWorld& world, std::string_view stage,
                                 std::span<const StarForest> sf_point,
                                 std::span<const Section> source, std::size_t width,
                                 std::span<const Bytes> data);

template <class T>
struct MigratedData {
  std::vector<Section> section;
  std::vector<std::vector<T>> data;
};

template <class T>
MigratedData<T> migrate_data(CommWorld& world, std::string_view stage,
                             std::span<const StarForest> sf_point, std::span<const Section> source,
                             const std::vector<std::vector<T>>& data) {
  std::vector<Bytes> raw(data.size());
  for (std::size_t r = 0; r < data.size(); ++r)
    append_pods<T>(raw[r], data[r]);
  auto moved = migrate_data_bytes(world, stage, sf_point, source, sizeof(T), raw);
  MigratedData<T> out;
  out.section = std::move(moved.section);
  out.data.resize(moved.data.size());
  for (std::size_t r = 0; r < moved.data.size(); ++r)
    out.data[r] = unpack_pods<T>(moved.data[r]);
  return out;
}

struct GlobalNumbering {
  std::vector<std::vector<PointId>> global;
  std::vector<std::vector<char>> owned;
};

/// Owned points get contiguous ids in rank order; ghosts (leaves of
/// `sf_point`) receive their owner's id.
GlobalNumbering create_global_numbering(CommWorld& world, std::string_view stage,
                                        std::span<const Plex> plex,
                                        std::span<const StarForest> sf_point);

struct MigratedMesh {
  std::vector<Plex> plex;
  /// Global id of every target point.
  std::vector<std::vector<PointId>> global;
};

/// Moves cones, orientations, coordinates and every label along
/// `sf_migration`, whose leaves on each rank must be exactly 0..n-1.
/// Cones are rewritten source-local -> global (`l2g`) -> target-local.
MigratedMesh migrate_mesh(CommWorld& world, std::string_view stage, std::span<const Plex> source,
                          std::span<const StarForest> sf_migration,
                          const std::vector<std::vector<PointId>>& l2g);

enum class OwnershipPolicy {
  /// Every received point bids; the highest rank wins.
  kHighestRank,
  /// Only points whose root lives on the receiving rank bid, so existing
  /// owners keep their points.
  kKeepOwners,
};

/// Ownership bids are MAXLOC-reduced to the roots and broadcast back; points
/// whose winner is another rank become leaves of the new point SF.
DistributedSF migrate_sf(CommWorld& world, std::string_view stage,
                         std::span<const StarForest> sf_migration,
                         OwnershipPolicy policy = OwnershipPolicy::kHighestRank);

} // namespace plexdist
