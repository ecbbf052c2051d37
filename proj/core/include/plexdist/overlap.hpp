#pragma once

#include "plexdist/distribute.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace plexdist {

/// Unions every stratum with the adjacency of its points.
Label partition_label_adjacency(const Plex& plex, const Label& label, Adjacency kind);

/// Per rank, value = target rank, points = closed set of local points to
/// donate to it. Every holder of a shared point donates that point's local
/// adjacency to all other holders; levels > 1 grow the donations locally.
std::vector<Label> create_overlap(CommWorld& world, std::string_view stage,
                                  std::span<const Plex> plex, std::span<const StarForest> point_sf,
                                  int levels, Adjacency kind);

/// Reorders leaves so the target chart lists cells, vertices, then faces
/// and edges. The first nretained[r] leaves of rank r come first within each
/// stratum; remaining order is kept. Source depths travel by one broadcast.
DistributedSF stratify_migration_sf(CommWorld& world, std::string_view stage,
                                    std::span<const Plex> source, std::span<const StarForest> sf,
                                    std::span<const PointId> nretained = {});

/// Grows each local mesh by `levels` of adjacency across rank boundaries.
/// Existing owners keep their points.
DistributedMesh distribute_overlap(CommWorld& world, const DistributedMesh& mesh, int levels,
                                   Adjacency kind);

} // namespace plexdist
