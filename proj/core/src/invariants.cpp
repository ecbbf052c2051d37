#include "plexdist/invariants.hpp"

#include "plexdist/meshgen.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace plexdist {

namespace {

std::string pt(PointId p) { return std::to_string(p); }

void prefix(std::vector<std::string>& out, std::size_t from, const std::string& tag) {
  for (std::size_t i = from; i < out.size(); ++i)
    out[i] = tag + out[i];
}

} // namespace

std::vector<std::string> check_plex(const Plex& plex, const CheckOptions& options) {
  std::vector<std::string> v;
  const PointId n = plex.size();

  std::size_t cone_total = 0, supp_total = 0;
  for (PointId p = 0; p < n; ++p) {
    const auto cone = plex.cone(p);
    const auto orient = plex.orientation(p);
    const auto k = static_cast<std::int32_t>(cone.size());
    cone_total += cone.size();
    supp_total += plex.support(p).size();
    for (std::size_t i = 0; i < cone.size(); ++i) {
      const auto q = cone[i];
      if (!plex.in_chart(q)) {
        v.push_back("closedness: cone of " + pt(p) + " references missing point " + pt(q));
        continue;
      }
      auto s = plex.support(q);
      if (!std::binary_search(s.begin(), s.end(), p))
        v.push_back("duality: " + pt(q) + " in cone(" + pt(p) + ") but " + pt(p) +
                    " not in supp(" + pt(q) + ")");
      if (plex.depth(q) >= plex.depth(p))
        v.push_back("acyclicity: depth does not decrease from " + pt(p) + " to " + pt(q));
      if (orient[i] < -k || orient[i] >= k)
        v.push_back("orientation " + std::to_string(orient[i]) + " of cone entry " + pt(q) +
                    " in " + pt(p) + " outside [-" + std::to_string(k) + ", " +
                    std::to_string(k) + ")");
    }
    auto s = plex.support(p);
    if (!std::is_sorted(s.begin(), s.end()))
      v.push_back("support of " + pt(p) + " is not sorted");
    for (auto q : s) {
      auto c = plex.cone(q);
      if (std::find(c.begin(), c.end(), p) == c.end())
        v.push_back("duality: " + pt(q) + " in supp(" + pt(p) + ") but " + pt(p) +
                    " not in cone(" + pt(q) + ")");
    }
  }
  if (cone_total != supp_total)
    v.push_back("duality: " + std::to_string(cone_total) + " cone entries vs " +
                std::to_string(supp_total) + " support entries");

  for (int d = 0; d <= plex.dimension(); ++d) {
    auto [s, e] = plex.depth_stratum(d);
    for (PointId p = s; p < e; ++p)
      if (plex.depth(p) != d)
        v.push_back("stratification: point " + pt(p) + " inside depth-" + std::to_string(d) +
                    " range has depth " + std::to_string(plex.depth(p)));
  }
  if (!plex.canonically_ordered())
    v.push_back("stratification: strata not in cell, vertex, face, edge order");

  if (plex.coordinates().size() !=
      static_cast<std::size_t>(plex.num_vertices()) * plex.coordinate_dim())
    v.push_back("coordinates: " + std::to_string(plex.coordinates().size()) +
                " values for " + pt(plex.num_vertices()) + " vertices");

  for (const auto& [name, label] : plex.labels())
    for (const auto& [value, pts] : label.strata())
      for (auto p : pts)
        if (!plex.in_chart(p))
          v.push_back("label '" + name + "' value " + std::to_string(value) +
                      " holds missing point " + pt(p));

  if (options.adjacency_symmetry) {
    std::vector<std::vector<PointId>> adj(n);
    for (PointId p = 0; p < n; ++p)
      adj[p] = plex.adjacency(p, Adjacency::kFE);
    for (PointId p = 0; p < n; ++p) {
      if (!std::binary_search(adj[p].begin(), adj[p].end(), p))
        v.push_back("FE adjacency of " + pt(p) + " misses the point itself");
      for (auto q : adj[p])
        if (!std::binary_search(adj[q].begin(), adj[q].end(), p))
          v.push_back("FE adjacency not symmetric for " + pt(p) + " and " + pt(q));
    }
  }
  return v;
}

std::vector<std::string> check_boundary_label(const Plex& plex) {
  std::vector<std::string> v;
  if (!plex.has_label(kBoundaryLabel)) {
    v.push_back("boundary label missing");
    return v;
  }
  const auto& have = plex.label(kBoundaryLabel);
  const auto want = topological_boundary(plex);
  if (!(have == want))
    v.push_back("boundary label holds " + std::to_string(have.num_entries()) +
                " entries; the topological boundary has " + std::to_string(want.num_entries()));
  return v;
}

std::vector<std::string> check_distributed(const DistributedMesh& mesh, const Plex* serial,
                                           const CheckOptions& options) {
  std::vector<std::string> v;
  const auto nranks = static_cast<int>(mesh.local.size());
  if (static_cast<int>(mesh.point_sf.size()) != nranks ||
      static_cast<int>(mesh.global.size()) != nranks) {
    v.push_back("distributed mesh: mesh, SF and numbering counts differ");
    return v;
  }

  std::vector<std::unordered_map<PointId, PointId>> g2l(nranks);
  std::vector<std::vector<char>> is_leaf(nranks);
  for (int r = 0; r < nranks; ++r) {
    const std::string tag = "rank " + std::to_string(r) + ": ";
    const auto& plex = mesh.local[r];
    const auto from = v.size();
    auto local = check_plex(plex, options);
    v.insert(v.end(), local.begin(), local.end());
    prefix(v, from, tag);

    if (static_cast<PointId>(mesh.global[r].size()) != plex.size()) {
      v.push_back(tag + "numbering size differs from mesh size");
      return v;
    }
    for (PointId p = 0; p < plex.size(); ++p)
      if (!g2l[r].emplace(mesh.global[r][p], p).second)
        v.push_back(tag + "global id " + pt(mesh.global[r][p]) + " appears twice");

    const auto& sf = mesh.point_sf[r];
    if (sf.nroots() != plex.size())
      v.push_back(tag + "point SF root space differs from mesh size");
    is_leaf[r].assign(plex.size(), 0);
    for (PointId i = 0; i < sf.nleaves(); ++i) {
      const auto l = sf.leaf(i);
      if (l < 0 || l >= plex.size()) {
        v.push_back(tag + "SF leaf " + pt(l) + " outside the mesh");
        continue;
      }
      if (is_leaf[r][l])
        v.push_back(tag + "SF leaf " + pt(l) + " repeated");
      is_leaf[r][l] = 1;
    }
  }
  if (!v.empty())
    return v;

  std::map<PointId, int> owners;
  for (int r = 0; r < nranks; ++r) {
    const std::string tag = "rank " + std::to_string(r) + ": ";
    const auto& sf = mesh.point_sf[r];
    for (PointId p = 0; p < mesh.local[r].size(); ++p)
      if (!is_leaf[r][p] && !owners.emplace(mesh.global[r][p], r).second)
        v.push_back("unique ownership: global point " + pt(mesh.global[r][p]) +
                    " owned by ranks " + std::to_string(owners[mesh.global[r][p]]) + " and " +
                    std::to_string(r));
    for (PointId i = 0; i < sf.nleaves(); ++i) {
      const auto l = sf.leaf(i);
      const auto rp = sf.remote(i);
      if (rp.rank < 0 || rp.rank >= nranks || rp.index < 0 ||
          rp.index >= mesh.local[rp.rank].size()) {
        v.push_back(tag + "leaf " + pt(l) + " references a missing root");
        continue;
      }
      if (rp.rank == r)
        v.push_back(tag + "leaf " + pt(l) + " is rooted on its own rank");
      if (is_leaf[rp.rank][rp.index])
        v.push_back(tag + "leaf " + pt(l) + " points at a ghost on rank " +
                    std::to_string(rp.rank));
      if (mesh.global[rp.rank][rp.index] != mesh.global[r][l])
        v.push_back(tag + "leaf " + pt(l) + " and its root carry different global ids");
      // The closure of a shared point is shared with its owner.
      for (auto q : mesh.local[r].closure(l))
        if (!g2l[rp.rank].contains(mesh.global[r][q]))
          v.push_back(tag + "closure point " + pt(q) + " of ghost " + pt(l) +
                      " missing on owner rank " + std::to_string(rp.rank));
    }
  }
  for (int r = 0; r < nranks; ++r)
    for (PointId p = 0; p < mesh.local[r].size(); ++p)
      if (!owners.contains(mesh.global[r][p]))
        v.push_back("unique ownership: global point " + pt(mesh.global[r][p]) +
                    " has no owner");

  if (serial == nullptr)
    return v;

  if (static_cast<PointId>(owners.size()) != serial->size())
    v.push_back("point conservation: " + std::to_string(owners.size()) +
                " owned points, serial mesh has " + pt(serial->size()));
  for (const auto& [g, r] : owners)
    if (!serial->in_chart(g))
      v.push_back("point conservation: global id " + pt(g) + " outside the serial mesh");
  if (!v.empty())
    return v;

  for (int r = 0; r < nranks; ++r) {
    const std::string tag = "rank " + std::to_string(r) + ": ";
    const auto& plex = mesh.local[r];
    const auto& gl = mesh.global[r];
    for (PointId p = 0; p < plex.size(); ++p) {
      const auto g = gl[p];
      auto lc = plex.cone(p);
      auto sc = serial->cone(g);
      bool same = lc.size() == sc.size();
      for (std::size_t k = 0; same && k < lc.size(); ++k)
        same = gl[lc[k]] == sc[k] && plex.orientation(p)[k] == serial->orientation(g)[k];
      if (!same)
        v.push_back(tag + "cone of point " + pt(p) + " differs from serial point " + pt(g));
      if (plex.depth(p) == 0 && serial->coordinate_dim() > 0) {
        auto a = plex.coordinate(p);
        auto b = serial->coordinate(g);
        if (!std::equal(a.begin(), a.end(), b.begin(), b.end()))
          v.push_back(tag + "coordinates of vertex " + pt(p) + " differ from serial");
      }
    }
    for (const auto& [name, label] : serial->labels()) {
      const auto& local = plex.label(name);
      for (PointId p = 0; p < plex.size(); ++p)
        if (label.values_of(gl[p]) != local.values_of(p))
          v.push_back(tag + "label '" + name + "' differs at point " + pt(p));
    }
  }
  return v;
}

} // namespace plexdist
