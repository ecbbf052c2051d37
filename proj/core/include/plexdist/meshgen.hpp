#pragma once

#include "plexdist/plex.hpp"
#include "plexdist/volume_model.hpp"

#include <cstdint>

namespace plexdist {

/// Fixed point ids of the two-triangle doublet.
namespace doublet {
inline constexpr PointId kA = 0, kB = 1;
inline constexpr PointId kAlpha = 2, kBeta = 3, kGamma = 4, kDelta = 5;
inline constexpr PointId ka = 6, kb = 7, kc = 8, kd = 9, ke = 10;
} // namespace doublet

/// Two triangles A = (alpha, beta, gamma) and B = (beta, delta, gamma)
/// sharing edge e, with a "boundary" label on the outer edges and vertices.
Plex gen_doublet();

/// Unit square with n x n quads split along the (i,j)-(i+1,j+1) diagonal.
Plex gen_box_2d(int n);

/// Unit cube with n^3 hexes split into 6 tetrahedra around the main diagonal.
Plex gen_box_3d(int n);

struct Counts2D {
  std::uint64_t cells = 0;
  std::uint64_t edges = 0;
  std::uint64_t vertices = 0;
};

Counts2D box_2d_counts(std::uint64_t n);
StratumCounts box_3d_counts(std::uint64_t n);

/// Counts read off a built mesh (faces are zero in 2D).
StratumCounts stratum_counts(const Plex& plex);

/// Marks codimension-1 points with a single supporting cell, plus their
/// closure, with value 1 of the "boundary" label (replacing any previous one).
void mark_boundary(Plex& plex);
/// The label mark_boundary would produce, without modifying the mesh.
Label topological_boundary(const Plex& plex);

} // namespace plexdist
