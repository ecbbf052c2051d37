#pragma once

#include "plexdist/comm.hpp"
#include "plexdist/label.hpp"
#include "plexdist/migrate.hpp"
#include "plexdist/partition.hpp"
#include "plexdist/plex.hpp"
#include "plexdist/star_forest.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace plexdist {

/// Per-rank local meshes, their point SFs (leaves are ghosts) and the
/// global id of every local point.
struct DistributedMesh {
  std::vector<Plex> local;
  DistributedSF point_sf;
  std::vector<std::vector<PointId>> global;
};

struct DistributeOptions {
  int overlap = 0;
  Adjacency adjacency = Adjacency::kFV;
};

/// Replaces every stratum by the closure of its points.
Label partition_label_closure(const Plex& plex, const Label& label);

/// Keeps each point only under the largest value carrying it.
Label partition_label_ownership(const Label& label);

/// The owner of every local point: (rank, p) for owned points, the SF
/// remote for ghosts.
std::vector<RemotePoint> owner_refs(const StarForest& point_sf, int rank);

struct InvertedPartition {
  /// Per receiver, a Section over sender ranks.
  std::vector<Section> section;
  /// Per receiver, the owner references sent to it, grouped by sender.
  std::vector<std::vector<RemotePoint>> points;
  /// Per receiver, value = owner rank, points = owner-local ids.
  std::vector<Label> label;
};

/// Turns sender-side labels (value = destination rank) into receiver-side
/// data with one data migration over the process graph `sf_proc`. Points
/// are sent as their owner references, looked up through `point_sf`.
InvertedPartition partition_label_invert(CommWorld& world, std::string_view stage,
                                         std::span<const Label> lbl_part,
                                         std::span<const StarForest> point_sf,
                                         std::span<const StarForest> sf_proc);

/// Migration SF with identity leaves ordered by (owner rank, owner index).
/// `nroots[r]` is the source point count of rank r.
DistributedSF partition_label_create_sf(std::span<const Label> lbl_mig,
                                        std::span<const PointId> nroots);

/// One-to-all distribution of a serial mesh held by rank 0.
DistributedMesh distribute(CommWorld& world, const Plex& serial, const Partitioner& partitioner,
                           const DistributeOptions& options = {});

struct RedistributeResult {
  DistributedMesh mesh;
  /// Numbering of the input mesh the migration was expressed in.
  GlobalNumbering numbering;
};

/// Many-to-many repartitioning of an already distributed mesh. The global
/// ids of the result refer to `numbering`.
RedistributeResult redistribute(CommWorld& world, const DistributedMesh& mesh,
                                const Partitioner& partitioner,
                                const DistributeOptions& options = {});

} // namespace plexdist
