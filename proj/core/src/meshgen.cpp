#include "plexdist/meshgen.hpp"

#include "plexdist/error.hpp"

#include <array>
#include <string>

namespace plexdist {

Plex gen_doublet() {
  using namespace doublet;
  // Cells, vertices, edges: a=(alpha,beta) b=(alpha,gamma) c=(beta,delta)
  // d=(delta,gamma) e=(beta,gamma).
  std::vector<std::int32_t> sizes{3, 3, 0, 0, 0, 0, 2, 2, 2, 2, 2};
  std::vector<PointId> cones{ka,     kb,     ke,     kc,     kd,    ke,     kAlpha, kBeta, kAlpha,
                             kGamma, kBeta,  kDelta, kDelta, kGamma, kBeta, kGamma};
  std::vector<std::int32_t> orients{0, -1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  Plex plex = Plex::build(std::move(sizes), std::move(cones), std::move(orients));
  plex.set_coordinates(2, {0.0, 0.0, 1.0, -1.0, 1.0, 1.0, 2.0, 0.0});
  mark_boundary(plex);
  return plex;
}

Plex gen_box_2d(int n) {
  if (n < 1)
    fail(ErrorKind::kInvalidArgument, "box size must be at least 1, got " + std::to_string(n));
  const PointId m = n + 1;
  auto vid = [m](PointId i, PointId j) { return i * m + j; };
  std::vector<std::vector<PointId>> cells;
  cells.reserve(static_cast<std::size_t>(2) * n * n);
  for (PointId i = 0; i < n; ++i)
    for (PointId j = 0; j < n; ++j) {
      const auto v00 = vid(i, j), v10 = vid(i + 1, j), v11 = vid(i + 1, j + 1), v01 = vid(i, j + 1);
      cells.push_back({v00, v10, v11});
      cells.push_back({v00, v11, v01});
    }
  Plex plex = plex_interpolate(cells, m * m, 2);
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(m) * m * 2);
  for (PointId i = 0; i < m; ++i)
    for (PointId j = 0; j < m; ++j) {
      coords.push_back(static_cast<double>(i) / n);
      coords.push_back(static_cast<double>(j) / n);
    }
  plex.set_coordinates(2, std::move(coords));
  mark_boundary(plex);
  return plex;
}

Plex gen_box_3d(int n) {
  if (n < 1)
    fail(ErrorKind::kInvalidArgument, "box size must be at least 1, got " + std::to_string(n));
  const PointId m = n + 1;
  auto vid = [m](const std::array<PointId, 3>& x) { return (x[0] * m + x[1]) * m + x[2]; };
  static constexpr std::array<std::array<int, 3>, 6> kPerms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<std::vector<PointId>> cells;
  cells.reserve(static_cast<std::size_t>(6) * n * n * n);
  for (PointId i = 0; i < n; ++i)
    for (PointId j = 0; j < n; ++j)
      for (PointId k = 0; k < n; ++k)
        for (const auto& perm : kPerms) {
          std::array<PointId, 3> x{i, j, k};
          std::vector<PointId> tet{vid(x)};
          for (int axis : perm) {
            ++x[axis];
            tet.push_back(vid(x));
          }
          cells.push_back(std::move(tet));
        }
  Plex plex = plex_interpolate(cells, m * m * m, 3);
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(m) * m * m * 3);
  for (PointId i = 0; i < m; ++i)
    for (PointId j = 0; j < m; ++j)
      for (PointId k = 0; k < m; ++k) {
        coords.push_back(static_cast<double>(i) / n);
        coords.push_back(static_cast<double>(j) / n);
        coords.push_back(static_cast<double>(k) / n);
      }
  plex.set_coordinates(3, std::move(coords));
  mark_boundary(plex);
  return plex;
}

Counts2D box_2d_counts(std::uint64_t n) {
  return {2 * n * n, 2 * n * (n + 1) + n * n, (n + 1) * (n + 1)};
}

StratumCounts box_3d_counts(std::uint64_t n) {
  StratumCounts c;
  c.cells = 6 * n * n * n;
  c.vertices = (n + 1) * (n + 1) * (n + 1);
  c.edges = 3 * n * (n + 1) * (n + 1) + 3 * n * n * (n + 1) + n * n * n;
  // Euler characteristic 1: V - E + F - C = 1.
  c.faces = 1 - c.vertices + c.edges + c.cells;
  return c;
}

StratumCounts stratum_counts(const Plex& plex) {
  StratumCounts c;
  c.cells = static_cast<std::uint64_t>(plex.num_cells());
  c.vertices = static_cast<std::uint64_t>(plex.num_vertices());
  c.faces = static_cast<std::uint64_t>(plex.num_faces());
  c.edges = static_cast<std::uint64_t>(plex.num_edges());
  return c;
}

Label topological_boundary(const Plex& plex) {
  Label out;
  const int dim = plex.dimension();
  if (dim < 1)
    return out;
  const auto [fs, fe] = plex.depth_stratum(dim - 1);
  std::vector<PointId> faces;
  for (PointId f = fs; f < fe; ++f)
    if (plex.support(f).size() == 1)
      faces.push_back(f);
  out.insert(1, plex.closure_of(faces));
  return out;
}

void mark_boundary(Plex& plex) { plex.set_label(kBoundaryLabel, topological_boundary(plex)); }

} // namespace plexdist
