#pragma once

#include "plexdist/distribute.hpp"
#include "plexdist/plex.hpp"

#include <string>
#include <vector>

namespace plexdist {

struct CheckOptions {
  /// FE adjacency symmetry is quadratic in star sizes; off for huge meshes.
  bool adjacency_symmetry = true;
};

/// Duality, acyclicity, closedness, stratification (contiguous and in
/// canonical order), orientation ranges, coordinate and label layout.
/// Returns human-readable violations; empty means valid.
std::vector<std::string> check_plex(const Plex& plex, const CheckOptions& options = {});

/// The "boundary" label equals the topological boundary.
std::vector<std::string> check_boundary_label(const Plex& plex);

/// Every local mesh valid; SFs well formed; each global id owned exactly
/// once; leaves and roots agree on global ids; shared closures shared. With
/// `serial`, also point conservation and cone/orientation/coordinate/label
/// agreement by global id.
std::vector<std::string> check_distributed(const DistributedMesh& mesh,
                                           const Plex* serial = nullptr,
                                           const CheckOptions& options = {});

} // namespace plexdist
