#include "plexdist/plex.hpp"

#include "plexdist/error.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>

namespace plexdist {

namespace {

int stratum_key(int depth, int dim) {
  if (depth == dim)
    return 0;
  if (depth == 0)
    return 1;
  return 2 + (dim - 1 - depth);
}

void sort_unique(std::vector<PointId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool contains(const std::vector<PointId>& v, PointId p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

} // namespace

Plex Plex::build(std::vector<std::int32_t> cone_sizes, std::vector<PointId> cones,
                 std::vector<std::int32_t> orientations, std::span<const int> depths) {
  const auto n = static_cast<PointId>(cone_sizes.size());
  std::int64_t total = 0;
  for (PointId p = 0; p < n; ++p) {
    if (cone_sizes[p] < 0)
      fail(ErrorKind::kInvalidArgument, "negative cone size at point " + std::to_string(p));
    total += cone_sizes[p];
  }
  if (total != static_cast<std::int64_t>(cones.size()))
    fail(ErrorKind::kInvalidArgument, "cone sizes sum to " + std::to_string(total) + " but " +
                                          std::to_string(cones.size()) + " cone points given");
  if (orientations.empty())
    orientations.assign(cones.size(), 0);
  if (orientations.size() != cones.size())
    fail(ErrorKind::kInvalidArgument, "orientation count differs from cone point count");

  Plex plex;
  plex.cone_size_ = std::move(cone_sizes);
  plex.cones_ = std::move(cones);
  plex.orients_ = std::move(orientations);
  plex.cone_off_.assign(n + 1, 0);
  for (PointId p = 0; p < n; ++p)
    plex.cone_off_[p + 1] = plex.cone_off_[p] + plex.cone_size_[p];
  plex.depth_.assign(n, -1);

  for (PointId p = 0; p < n; ++p) {
    auto c = plex.cone(p);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0 || c[i] >= n)
        fail(ErrorKind::kInvalidArgument, "cone of point " + std::to_string(p) +
                                              " references " + std::to_string(c[i]) +
                                              " outside chart [0, " + std::to_string(n) + ")");
      if (c[i] == p)
        fail(ErrorKind::kInvalidTopology, "point " + std::to_string(p) + " covers itself");
      for (std::size_t j = 0; j < i; ++j)
        if (c[j] == c[i])
          fail(ErrorKind::kInvalidTopology, "cone of point " + std::to_string(p) +
                                                " repeats point " + std::to_string(c[i]));
    }
  }

  // Depth = longest cone path to a vertex; iterative DFS doubles as cycle check.
  std::vector<char> state(n, 0);
  std::vector<std::pair<PointId, std::int32_t>> stack;
  for (PointId root = 0; root < n; ++root) {
    if (state[root] == 2)
      continue;
    stack.emplace_back(root, 0);
    state[root] = 1;
    while (!stack.empty()) {
      auto& [p, next] = stack.back();
      if (next < plex.cone_size_[p]) {
        const PointId q = plex.cones_[plex.cone_off_[p] + next];
        ++next;
        if (state[q] == 1)
          fail(ErrorKind::kInvalidTopology,
               "covering cycle through points " + std::to_string(p) + " and " + std::to_string(q));
        if (state[q] == 0) {
          state[q] = 1;
          stack.emplace_back(q, 0);
        }
        continue;
      }
      int d = 0;
      for (auto q : plex.cone(p))
        d = std::max(d, plex.depth_[q] + 1);
      plex.depth_[p] = d;
      state[p] = 2;
      stack.pop_back();
    }
  }

  if (!depths.empty()) {
    if (static_cast<PointId>(depths.size()) != n)
      fail(ErrorKind::kInvalidArgument, "declared depth count differs from point count");
    for (PointId p = 0; p < n; ++p)
      if (depths[p] != plex.depth_[p])
        fail(ErrorKind::kInvalidTopology, "point " + std::to_string(p) + " declared depth " +
                                              std::to_string(depths[p]) + " but its cones imply " +
                                              std::to_string(plex.depth_[p]));
  }

  int maxd = -1;
  for (auto d : plex.depth_)
    maxd = std::max(maxd, d);
  std::vector<PointId> lo(maxd + 1, n), hi(maxd + 1, -1), count(maxd + 1, 0);
  for (PointId p = 0; p < n; ++p) {
    const int d = plex.depth_[p];
    lo[d] = std::min(lo[d], p);
    hi[d] = std::max(hi[d], p);
    ++count[d];
  }
  plex.strata_.resize(maxd + 1);
  for (int d = 0; d <= maxd; ++d) {
    if (hi[d] - lo[d] + 1 != count[d])
      fail(ErrorKind::kInvalidNumbering,
           "points of depth " + std::to_string(d) + " are not numbered contiguously");
    plex.strata_[d] = {lo[d], hi[d] + 1};
  }

  plex.supp_off_.assign(n + 1, 0);
  for (auto q : plex.cones_)
    ++plex.supp_off_[q + 1];
  std::partial_sum(plex.supp_off_.begin(), plex.supp_off_.end(), plex.supp_off_.begin());
  plex.supports_.resize(plex.cones_.size());
  std::vector<std::int32_t> fill(plex.supp_off_.begin(), plex.supp_off_.end() - 1);
  for (PointId p = 0; p < n; ++p)
    for (auto q : plex.cone(p))
      plex.supports_[fill[q]++] = p;
  return plex;
}

void Plex::check_point(PointId p) const {
  if (!in_chart(p))
    fail(ErrorKind::kInvalidArgument,
         "point " + std::to_string(p) + " outside chart [0, " + std::to_string(size()) + ")");
}

std::span<const PointId> Plex::cone(PointId p) const {
  check_point(p);
  return std::span<const PointId>(cones_).subspan(cone_off_[p], cone_size_[p]);
}

std::span<const std::int32_t> Plex::orientation(PointId p) const {
  check_point(p);
  return std::span<const std::int32_t>(orients_).subspan(cone_off_[p], cone_size_[p]);
}

std::int32_t Plex::cone_size(PointId p) const {
  check_point(p);
  return cone_size_[p];
}

std::span<const PointId> Plex::support(PointId p) const {
  check_point(p);
  return std::span<const PointId>(supports_).subspan(supp_off_[p], supp_off_[p + 1] - supp_off_[p]);
}

std::vector<PointId> Plex::closure(PointId p) const {
  check_point(p);
  std::vector<PointId> out{p};
  std::size_t head = 0;
  while (head < out.size()) {
    const auto x = out[head++];
    for (auto q : cone(x))
      if (!contains(out, q))
        out.push_back(q);
  }
  return out;
}

std::vector<PointId> Plex::star(PointId p) const {
  check_point(p);
  std::vector<PointId> out{p};
  std::size_t head = 0;
  while (head < out.size()) {
    const auto x = out[head++];
    for (auto q : support(x))
      if (!contains(out, q))
        out.push_back(q);
  }
  return out;
}

std::vector<PointId> Plex::adjacency(PointId p, Adjacency kind) const {
  check_point(p);
  std::vector<PointId> out;
  if (kind == Adjacency::kFE) {
    for (auto s : star(p)) {
      auto cl = closure(s);
      out.insert(out.end(), cl.begin(), cl.end());
    }
  } else {
    out.push_back(p);
    auto sp = support(p);
    out.insert(out.end(), sp.begin(), sp.end());
    for (auto c : cone(p)) {
      auto sc = support(c);
      out.insert(out.end(), sc.begin(), sc.end());
    }
  }
  sort_unique(out);
  return out;
}

std::vector<PointId> Plex::closure_of(std::span<const PointId> points) const {
  std::vector<char> seen(size(), 0);
  std::vector<PointId> out;
  for (auto p : points) {
    check_point(p);
    if (seen[p])
      continue;
    seen[p] = 1;
    out.push_back(p);
    for (std::size_t head = out.size() - 1; head < out.size(); ++head)
      for (auto q : cone(out[head]))
        if (!seen[q]) {
          seen[q] = 1;
          out.push_back(q);
        }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointId> Plex::star_of(std::span<const PointId> points) const {
  std::vector<char> seen(size(), 0);
  std::vector<PointId> out;
  for (auto p : points) {
    check_point(p);
    if (seen[p])
      continue;
    seen[p] = 1;
    out.push_back(p);
    for (std::size_t head = out.size() - 1; head < out.size(); ++head)
      for (auto q : support(out[head]))
        if (!seen[q]) {
          seen[q] = 1;
          out.push_back(q);
        }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Plex::depth(PointId p) const {
  check_point(p);
  return depth_[p];
}

std::pair<PointId, PointId> Plex::depth_stratum(int d) const {
  if (d < 0 || d >= static_cast<int>(strata_.size()))
    return {0, 0};
  return strata_[d];
}

PointId Plex::num_cells() const {
  auto [s, e] = depth_stratum(dimension());
  return e - s;
}

PointId Plex::num_vertices() const {
  auto [s, e] = depth_stratum(0);
  return e - s;
}

PointId Plex::num_faces() const {
  if (dimension() != 3)
    return 0;
  auto [s, e] = depth_stratum(2);
  return e - s;
}

PointId Plex::num_edges() const {
  if (dimension() < 2)
    return 0;
  auto [s, e] = depth_stratum(1);
  return e - s;
}

bool Plex::canonically_ordered() const {
  const int dim = dimension();
  std::vector<std::pair<PointId, int>> order;
  for (int d = 0; d <= dim; ++d)
    order.emplace_back(strata_[d].first, stratum_key(d, dim));
  std::sort(order.begin(), order.end());
  for (std::size_t i = 1; i < order.size(); ++i)
    if (order[i - 1].second > order[i].second)
      return false;
  return true;
}

Label Plex::depth_label() const {
  Label out;
  for (int d = 0; d <= dimension(); ++d) {
    std::vector<PointId> pts(strata_[d].second - strata_[d].first);
    std::iota(pts.begin(), pts.end(), strata_[d].first);
    out.insert(d, pts);
  }
  return out;
}

std::span<const double> Plex::coordinate(PointId vertex) const {
  check_point(vertex);
  if (depth_[vertex] != 0)
    fail(ErrorKind::kInvalidArgument, "point " + std::to_string(vertex) + " is not a vertex");
  if (coord_dim_ == 0)
    return {};
  const auto ordinal = static_cast<std::size_t>(vertex - strata_[0].first);
  return std::span<const double>(coords_).subspan(ordinal * coord_dim_, coord_dim_);
}

void Plex::set_coordinates(int dim, std::vector<double> coords) {
  if (dim < 0)
    fail(ErrorKind::kInvalidArgument, "negative coordinate dimension");
  if (coords.size() != static_cast<std::size_t>(num_vertices()) * dim)
    fail(ErrorKind::kInvalidArgument, "expected " + std::to_string(num_vertices()) + " x " +
                                          std::to_string(dim) + " coordinates, got " +
                                          std::to_string(coords.size()));
  coord_dim_ = dim;
  coords_ = std::move(coords);
}

bool Plex::has_label(std::string_view name) const { return labels_.find(name) != labels_.end(); }

const Label& Plex::label(std::string_view name) const {
  static const Label empty;
  auto it = labels_.find(name);
  return it == labels_.end() ? empty : it->second;
}

Label& Plex::mutable_label(std::string_view name) {
  auto it = labels_.find(name);
  if (it == labels_.end())
    it = labels_.emplace(std::string(name), Label{}).first;
  return it->second;
}

void Plex::set_label(std::string_view name, Label label) {
  for (const auto& [v, pts] : label.strata())
    for (auto p : pts)
      check_point(p);
  mutable_label(name) = std::move(label);
}

void Plex::remove_label(std::string_view name) {
  auto it = labels_.find(name);
  if (it != labels_.end())
    labels_.erase(it);
}

std::vector<std::string> Plex::label_names() const {
  std::vector<std::string> out;
  for (const auto& [name, l] : labels_)
    out.push_back(name);
  return out;
}

namespace {

struct PairHash {
  std::size_t operator()(const std::array<PointId, 2>& k) const {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(k[0]) << 32) ^
                                      static_cast<std::uint32_t>(k[1]));
  }
};

struct TripleHash {
  std::size_t operator()(const std::array<PointId, 3>& k) const {
    std::uint64_t h = static_cast<std::uint32_t>(k[0]);
    h = h * 0x9E3779B97F4A7C15ull + static_cast<std::uint32_t>(k[1]);
    h = h * 0x9E3779B97F4A7C15ull + static_cast<std::uint32_t>(k[2]);
    return std::hash<std::uint64_t>{}(h);
  }
};

// Deduplicates oriented segments by their sorted endpoints.
class SegmentTable {
public:
  /// Returns (segment ordinal, orientation of (a, b) against the stored one).
  std::pair<PointId, std::int32_t> find_or_add(PointId a, PointId b) {
    std::array<PointId, 2> key{std::min(a, b), std::max(a, b)};
    auto [it, inserted] = ids_.try_emplace(key, static_cast<PointId>(verts_.size()));
    if (inserted)
      verts_.push_back({a, b});
    const auto& stored = verts_[it->second];
    return {it->second, stored[0] == a ? 0 : -1};
  }
  const std::vector<std::array<PointId, 2>>& verts() const { return verts_; }

private:
  std::unordered_map<std::array<PointId, 2>, PointId, PairHash> ids_;
  std::vector<std::array<PointId, 2>> verts_;
};

// Orientation of the cell-side tuple u against the stored triangle w.
std::int32_t triangle_orientation(const std::array<PointId, 3>& u, const std::array<PointId, 3>& w) {
  int s = 0;
  while (w[s] != u[0])
    ++s;
  return w[(s + 1) % 3] == u[1] ? s : -(s + 1);
}

} // namespace

Plex plex_interpolate(std::span<const std::vector<PointId>> cells, PointId nvertices, int dim) {
  if (dim != 2 && dim != 3)
    fail(ErrorKind::kUnsupportedShape,
         "interpolation supports triangles and tetrahedra, not dimension " + std::to_string(dim));
  if (nvertices < 0)
    fail(ErrorKind::kInvalidArgument, "negative vertex count");
  const auto nc = static_cast<PointId>(cells.size());
  for (PointId c = 0; c < nc; ++c) {
    const auto& cv = cells[c];
    if (static_cast<int>(cv.size()) != dim + 1)
      fail(ErrorKind::kUnsupportedShape, "cell " + std::to_string(c) + " has " +
                                             std::to_string(cv.size()) +
                                             " vertices; expected a simplex with " +
                                             std::to_string(dim + 1));
    for (std::size_t i = 0; i < cv.size(); ++i) {
      if (cv[i] < 0 || cv[i] >= nvertices)
        fail(ErrorKind::kInvalidArgument, "cell " + std::to_string(c) + " references vertex " +
                                              std::to_string(cv[i]) + " outside [0, " +
                                              std::to_string(nvertices) + ")");
      for (std::size_t j = 0; j < i; ++j)
        if (cv[j] == cv[i])
          fail(ErrorKind::kUnsupportedShape,
               "cell " + std::to_string(c) + " repeats vertex " + std::to_string(cv[i]));
    }
  }

  std::vector<std::int32_t> sizes;
  std::vector<PointId> cones;
  std::vector<std::int32_t> orients;
  const PointId vstart = nc;

  if (dim == 2) {
    SegmentTable edges;
    std::vector<std::array<std::pair<PointId, std::int32_t>, 3>> cell_edges(nc);
    for (PointId c = 0; c < nc; ++c)
      for (int k = 0; k < 3; ++k)
        cell_edges[c][k] = edges.find_or_add(cells[c][k], cells[c][(k + 1) % 3]);
    const auto ne = static_cast<PointId>(edges.verts().size());
    const PointId estart = vstart + nvertices;
    sizes.reserve(nc + nvertices + ne);
    for (PointId c = 0; c < nc; ++c) {
      sizes.push_back(3);
      for (const auto& [e, o] : cell_edges[c]) {
        cones.push_back(estart + e);
        orients.push_back(o);
      }
    }
    sizes.insert(sizes.end(), nvertices, 0);
    for (const auto& ev : edges.verts()) {
      sizes.push_back(2);
      cones.push_back(vstart + ev[0]);
      cones.push_back(vstart + ev[1]);
      orients.insert(orients.end(), 2, 0);
    }
    return Plex::build(std::move(sizes), std::move(cones), std::move(orients));
  }

  static constexpr std::array<std::array<int, 3>, 4> kTetFaces{
      {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {2, 1, 3}}};
  std::unordered_map<std::array<PointId, 3>, PointId, TripleHash> face_ids;
  std::vector<std::array<PointId, 3>> face_verts;
  std::vector<std::array<std::pair<PointId, std::int32_t>, 4>> cell_faces(nc);
  for (PointId c = 0; c < nc; ++c)
    for (int k = 0; k < 4; ++k) {
      std::array<PointId, 3> u{cells[c][kTetFaces[k][0]], cells[c][kTetFaces[k][1]],
                               cells[c][kTetFaces[k][2]]};
      auto key = u;
      std::sort(key.begin(), key.end());
      auto [it, inserted] = face_ids.try_emplace(key, static_cast<PointId>(face_verts.size()));
      if (inserted)
        face_verts.push_back(u);
      cell_faces[c][k] = {it->second, triangle_orientation(u, face_verts[it->second])};
    }
  const auto nf = static_cast<PointId>(face_verts.size());

  SegmentTable edges;
  std::vector<std::array<std::pair<PointId, std::int32_t>, 3>> face_edges(nf);
  for (PointId f = 0; f < nf; ++f)
    for (int k = 0; k < 3; ++k)
      face_edges[f][k] = edges.find_or_add(face_verts[f][k], face_verts[f][(k + 1) % 3]);
  const auto ne = static_cast<PointId>(edges.verts().size());
  const PointId fstart = vstart + nvertices;
  const PointId estart = fstart + nf;

  sizes.reserve(nc + nvertices + nf + ne);
  for (PointId c = 0; c < nc; ++c) {
    sizes.push_back(4);
    for (const auto& [f, o] : cell_faces[c]) {
      cones.push_back(fstart + f);
      orients.push_back(o);
    }
  }
  sizes.insert(sizes.end(), nvertices, 0);
  for (PointId f = 0; f < nf; ++f) {
    sizes.push_back(3);
    for (const auto& [e, o] : face_edges[f]) {
      cones.push_back(estart + e);
      orients.push_back(o);
    }
  }
  for (const auto& ev : edges.verts()) {
    sizes.push_back(2);
    cones.push_back(vstart + ev[0]);
    cones.push_back(vstart + ev[1]);
    orients.insert(orients.end(), 2, 0);
  }
  return Plex::build(std::move(sizes), std::move(cones), std::move(orients));
}

namespace {

std::array<PointId, 2> oriented_segment(const Plex& plex, PointId edge, std::int32_t o) {
  auto ev = plex.cone(edge);
  if (ev.size() != 2)
    fail(ErrorKind::kUnsupportedShape, "point " + std::to_string(edge) + " is not a segment");
  return o == 0 ? std::array<PointId, 2>{ev[0], ev[1]} : std::array<PointId, 2>{ev[1], ev[0]};
}

std::array<PointId, 3> stored_triangle(const Plex& plex, PointId p) {
  auto c = plex.cone(p);
  auto o = plex.orientation(p);
  if (c.size() != 3)
    fail(ErrorKind::kUnsupportedShape, "point " + std::to_string(p) + " is not a triangle");
  auto s0 = oriented_segment(plex, c[0], o[0]);
  for (int k = 1; k < 3; ++k)
    for (auto v : oriented_segment(plex, c[k], o[k]))
      if (v != s0[0] && v != s0[1])
        return {s0[0], s0[1], v};
  fail(ErrorKind::kUnsupportedShape, "point " + std::to_string(p) + " is a degenerate triangle");
}

// Cone entry of a triangle joining vertices a and b.
PointId edge_between(const Plex& plex, PointId tri, PointId a, PointId b) {
  for (auto e : plex.cone(tri)) {
    auto ev = plex.cone(e);
    if ((ev[0] == a && ev[1] == b) || (ev[0] == b && ev[1] == a))
      return e;
  }
  fail(ErrorKind::kUnsupportedShape, "triangle " + std::to_string(tri) + " has no edge joining " +
                                         std::to_string(a) + " and " + std::to_string(b));
}

} // namespace

std::vector<PointId> triangle_vertices(const Plex& plex, PointId cell) {
  auto t = stored_triangle(plex, cell);
  return {t[0], t[1], t[2]};
}

std::vector<PointId> tetrahedron_vertices(const Plex& plex, PointId cell) {
  auto c = plex.cone(cell);
  auto o = plex.orientation(cell);
  if (c.size() != 4)
    fail(ErrorKind::kUnsupportedShape, "point " + std::to_string(cell) + " is not a tetrahedron");
  auto w = stored_triangle(plex, c[0]);
  std::vector<PointId> out(3);
  if (o[0] >= 0) {
    for (int k = 0; k < 3; ++k)
      out[k] = w[(o[0] + k) % 3];
  } else {
    const int s = -(o[0] + 1);
    for (int k = 0; k < 3; ++k)
      out[k] = w[(s - k + 3) % 3];
  }
  for (auto v : stored_triangle(plex, c[1]))
    if (std::find(out.begin(), out.end(), v) == out.end()) {
      out.push_back(v);
      break;
    }
  return out;
}

Plex plex_uniform_refine_2d(const Plex& plex) {
  if (plex.dimension() != 2)
    fail(ErrorKind::kUnsupportedShape, "regular refinement needs a 2D interpolated mesh");
  const auto [cstart, cend] = plex.depth_stratum(2);
  const auto [vstart, vend] = plex.depth_stratum(0);
  const auto [estart, eend] = plex.depth_stratum(1);
  const PointId nv = vend - vstart;
  const PointId ne = eend - estart;

  auto vord = [&](PointId v) { return v - vstart; };
  auto mid = [&](PointId e) { return nv + (e - estart); };

  std::vector<std::vector<PointId>> children;
  children.reserve(static_cast<std::size_t>(cend - cstart) * 4);
  std::vector<std::array<PointId, 3>> cell_mids;
  for (PointId c = cstart; c < cend; ++c) {
    if (plex.cone_size(c) != 3)
      fail(ErrorKind::kUnsupportedShape, "cell " + std::to_string(c) + " is not a triangle");
    auto t = triangle_vertices(plex, c);
    const PointId v0 = vord(t[0]), v1 = vord(t[1]), v2 = vord(t[2]);
    const PointId m01 = mid(edge_between(plex, c, t[0], t[1]));
    const PointId m12 = mid(edge_between(plex, c, t[1], t[2]));
    const PointId m20 = mid(edge_between(plex, c, t[2], t[0]));
    children.push_back({v0, m01, m20});
    children.push_back({m01, v1, m12});
    children.push_back({m20, m12, v2});
    children.push_back({m01, m12, m20});
    cell_mids.push_back({m01, m12, m20});
  }
  Plex fine = plex_interpolate(children, nv + ne, 2);

  if (plex.coordinate_dim() > 0) {
    const int cd = plex.coordinate_dim();
    std::vector<double> coords(plex.coordinates().begin(), plex.coordinates().end());
    coords.reserve(static_cast<std::size_t>(nv + ne) * cd);
    for (PointId e = estart; e < eend; ++e) {
      auto ev = plex.cone(e);
      auto a = plex.coordinate(ev[0]);
      auto b = plex.coordinate(ev[1]);
      for (int k = 0; k < cd; ++k)
        coords.push_back(0.5 * (a[k] + b[k]));
    }
    fine.set_coordinates(cd, std::move(coords));
  }

  if (plex.labels().empty())
    return fine;

  const auto [fvstart, fvend] = fine.depth_stratum(0);
  const auto [festart, feend] = fine.depth_stratum(1);
  const PointId fcstart = fine.depth_stratum(2).first;
  std::unordered_map<std::array<PointId, 2>, PointId, PairHash> fine_edge;
  for (PointId e = festart; e < feend; ++e) {
    auto ev = fine.cone(e);
    fine_edge[{std::min(ev[0], ev[1]), std::max(ev[0], ev[1])}] = e;
  }
  auto edge_of = [&](PointId a, PointId b) {
    a += fvstart;
    b += fvstart;
    return fine_edge.at({std::min(a, b), std::max(a, b)});
  };

  // Coarse point -> fine points it is split into.
  auto images = [&](PointId p) {
    std::vector<PointId> out;
    const int d = plex.depth(p);
    if (d == 0) {
      out.push_back(fvstart + vord(p));
    } else if (d == 1) {
      auto ev = plex.cone(p);
      const PointId m = mid(p);
      out.push_back(fvstart + m);
      out.push_back(edge_of(vord(ev[0]), m));
      out.push_back(edge_of(m, vord(ev[1])));
    } else {
      const PointId k = p - cstart;
      for (PointId j = 0; j < 4; ++j)
        out.push_back(fcstart + 4 * k + j);
      const auto& m = cell_mids[k];
      out.push_back(edge_of(m[0], m[1]));
      out.push_back(edge_of(m[1], m[2]));
      out.push_back(edge_of(m[2], m[0]));
    }
    return out;
  };

  for (const auto& [name, label] : plex.labels()) {
    Label refined;
    for (const auto& [value, pts] : label.strata())
      for (auto p : pts)
        refined.insert(value, images(p));
    fine.set_label(name, std::move(refined));
  }
  return fine;
}

} // namespace plexdist
