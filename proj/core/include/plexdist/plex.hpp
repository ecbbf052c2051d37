#pragma once

#include "plexdist/label.hpp"
#include "plexdist/types.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace plexdist {

enum class Adjacency { kFE, kFV };

inline constexpr std::string_view kBoundaryLabel = "boundary";

/// Hasse-diagram mesh: points 0..size()-1 with ordered cones, orientations,
/// derived supports and depths. Points of equal depth occupy contiguous ids.
class Plex {
public:
  Plex() = default;

  /// Validates chart references, acyclicity and stratum contiguity. An empty
  /// `orientations` means all zero. A non-empty `depths` must agree with the
  /// depths implied by the cones.
  static Plex build(std::vector<std::int32_t> cone_sizes, std::vector<PointId> cones,
                    std::vector<std::int32_t> orientations, std::span<const int> depths = {});

  PointId size() const { return static_cast<PointId>(depth_.size()); }
  bool in_chart(PointId p) const { return p >= 0 && p < size(); }

  std::span<const PointId> cone(PointId p) const;
  std::span<const std::int32_t> orientation(PointId p) const;
  std::int32_t cone_size(PointId p) const;
  /// Ascending.
  std::span<const PointId> support(PointId p) const;

  /// Breadth-first from p; each frontier in stored-cone order.
  std::vector<PointId> closure(PointId p) const;
  /// Breadth-first from p; each frontier in ascending-support order.
  std::vector<PointId> star(PointId p) const;
  /// Sorted. FE: cl(st(p)). FV: p, supp(p) and supp(cone(p)).
  std::vector<PointId> adjacency(PointId p, Adjacency kind) const;

  /// Sorted unions over a point set.
  std::vector<PointId> closure_of(std::span<const PointId> points) const;
  std::vector<PointId> star_of(std::span<const PointId> points) const;

  int depth(PointId p) const;
  /// Largest depth present, -1 for an empty mesh.
  int dimension() const { return static_cast<int>(strata_.size()) - 1; }
  /// [start, end) of the points at depth d; empty for absent depths.
  std::pair<PointId, PointId> depth_stratum(int d) const;
  PointId num_cells() const;
  PointId num_vertices() const;
  /// Points at depth dim-1 and 1 of a 3D mesh (zero otherwise).
  PointId num_faces() const;
  PointId num_edges() const;
  /// Strata appear in the order cells, vertices, faces, edges.
  bool canonically_ordered() const;
  /// Point depths as a label (value = depth).
  Label depth_label() const;

  std::span<const std::int32_t> cone_sizes() const { return cone_size_; }
  std::span<const PointId> cones() const { return cones_; }
  std::span<const std::int32_t> orientations() const { return orients_; }

  int coordinate_dim() const { return coord_dim_; }
  /// Flat, vertex-stratum order.
  std::span<const double> coordinates() const { return coords_; }
  std::span<const double> coordinate(PointId vertex) const;
  void set_coordinates(int dim, std::vector<double> coords);

  bool has_label(std::string_view name) const;
  /// Empty label for unknown names.
  const Label& label(std::string_view name) const;
  Label& mutable_label(std::string_view name);
  void set_label(std::string_view name, Label label);
  void remove_label(std::string_view name);
  std::vector<std::string> label_names() const;
  const std::map<std::string, Label, std::less<>>& labels() const { return labels_; }

  friend bool operator==(const Plex&, const Plex&) = default;

private:
  void check_point(PointId p) const;

  std::vector<std::int32_t> cone_size_;
  std::vector<std::int32_t> cone_off_;
  std::vector<PointId> cones_;
  std::vector<std::int32_t> orients_;
  std::vector<std::int32_t> supp_off_;
  std::vector<PointId> supports_;
  std::vector<int> depth_;
  std::vector<std::pair<PointId, PointId>> strata_;
  int coord_dim_ = 0;
  std::vector<double> coords_;
  std::map<std::string, Label, std::less<>> labels_;
};

/// Builds a fully interpolated simplicial mesh from cell-vertex lists
/// (vertices numbered 0..nvertices-1). dim is 2 (triangles) or 3 (tets).
/// Shared edges and faces are deduplicated by sorted vertex tuple, with ids
/// assigned in first-seen order.
Plex plex_interpolate(std::span<const std::vector<PointId>> cells, PointId nvertices, int dim);

/// Vertex tuple of a 2D triangle cell, read through its oriented edges.
std::vector<PointId> triangle_vertices(const Plex& plex, PointId cell);
/// Vertex tuple of a 3D tetrahedron: first face's vertices plus the apex.
std::vector<PointId> tetrahedron_vertices(const Plex& plex, PointId cell);

/// Regular edge-midpoint refinement of a 2D triangle mesh. Labels move to
/// child points; midpoint coordinates are edge means.
Plex plex_uniform_refine_2d(const Plex& plex);

} // namespace plexdist
