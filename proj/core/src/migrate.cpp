#include "plexdist/migrate.hpp"

#include "plexdist/error.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>

namespace plexdist {

namespace {

void require_ranks(const CommWorld& world, std::size_t n, const char* what) {
  if (static_cast<int>(n) != world.size())
    fail(ErrorKind::kContractViolation, std::string(what) + " must provide one entry per rank");
}

// Root-space arrays of dofs and offsets, as seen by an SF with nroots roots.
void root_layout(const Section& s, PointId nroots, std::vector<std::int32_t>& dof,
                 std::vector<std::int32_t>& off) {
  dof.resize(nroots);
  off.resize(nroots);
  for (PointId p = 0; p < nroots; ++p) {
    dof[p] = s.dof(p);
    off[p] = s.offset(p);
  }
}

// Leaves on every rank must enumerate exactly 0..n-1.
void require_permutation_leaves(const StarForest& sf, int rank) {
  const PointId n = sf.nleaves();
  if (sf.leaf_space() != n)
    fail(ErrorKind::kInvalidArgument,
         "migration SF on rank " + std::to_string(rank) + " leaves holes in its target chart");
  if (sf.identity_leaves())
    return;
  std::vector<char> seen(n, 0);
  for (PointId i = 0; i < n; ++i) {
    if (seen[sf.leaf(i)])
      fail(ErrorKind::kInvalidArgument, "migration SF on rank " + std::to_string(rank) +
                                            " repeats leaf " + std::to_string(sf.leaf(i)));
    seen[sf.leaf(i)] = 1;
  }
}

Bytes pack_metadata(const Plex& plex) {
  Bytes out;
  append_pod<std::int32_t>(out, plex.coordinate_dim());
  const auto names = plex.label_names();
  append_pod<std::int32_t>(out, static_cast<std::int32_t>(names.size()));
  for (const auto& name : names) {
    append_pod<std::int32_t>(out, static_cast<std::int32_t>(name.size()));
    append_pods<char>(out, std::span<const char>(name.data(), name.size()));
  }
  return out;
}

std::pair<int, std::vector<std::string>> merge_metadata(const std::vector<Bytes>& all) {
  int cdim = 0;
  std::set<std::string> names;
  for (const auto& bytes : all) {
    std::size_t pos = 0;
    auto next_int = [&]() {
      std::int32_t v = 0;
      std::memcpy(&v, bytes.data() + pos, sizeof v);
      pos += sizeof v;
      return v;
    };
    cdim = std::max(cdim, static_cast<int>(next_int()));
    const auto count = next_int();
    for (std::int32_t i = 0; i < count; ++i) {
      const auto len = static_cast<std::size_t>(next_int());
      names.emplace(reinterpret_cast<const char*>(bytes.data() + pos), len);
      pos += len;
    }
  }
  return {cdim, {names.begin(), names.end()}};
}

} // namespace

SectionMigration distribute_section(CommWorld& world, std::string_view stage,
                                    std::span<const StarForest> sf,
                                    std::span<const Section> source) {
  require_ranks(world, sf.size(), "section distribution SF");
  require_ranks(world, source.size(), "section distribution source");
  const int nranks = world.size();
  std::vector<std::vector<std::int32_t>> dofs(nranks), offs(nranks);
  for (int r = 0; r < nranks; ++r) {
    if (!source[r].is_setup())
      fail(ErrorKind::kInvalidArgument,
           "source section on rank " + std::to_string(r) + " has not been set up");
    root_layout(source[r], sf[r].nroots(), dofs[r], offs[r]);
  }
  auto leaf_dofs = sf_bcast<std::int32_t>(world, stage, sf, dofs);
  auto leaf_offs = sf_bcast<std::int32_t>(world, stage, sf, offs);

  SectionMigration out;
  out.target.resize(nranks);
  for (int r = 0; r < nranks; ++r) {
    PointId lo = 0, hi = 0;
    if (sf[r].nleaves() > 0) {
      lo = sf[r].leaf(0);
      for (PointId i = 0; i < sf[r].nleaves(); ++i)
        lo = std::min(lo, sf[r].leaf(i));
      hi = sf[r].leaf_space();
    }
    Section target(lo, hi);
    for (PointId i = 0; i < sf[r].nleaves(); ++i)
      target.set_dof(sf[r].leaf(i), leaf_dofs[r][i]);
    target.setup();
    out.target[r] = std::move(target);
  }
  out.remote_offsets = std::move(leaf_offs);
  return out;
}

MigratedBytes migrate_data_bytes(CommWorld& world, std::string_view stage,
                                 std::span<const StarForest> sf_point,
                                 std::span<const Section> source, std::size_t width,
                                 std::span<const Bytes> data) {
  require_ranks(world, data.size(), "migrated data");
  const int nranks = world.size();
  auto layout = distribute_section(world, stage, sf_point, source);
  for (int r = 0; r < nranks; ++r)
    if (data[r].size() != static_cast<std::size_t>(source[r].storage_size()) * width)
      fail(ErrorKind::kInconsistentLayout,
           "data on rank " + std::to_string(r) + " does not match its section layout");
  auto sf_dof =
      sf_create_section_sf(world, sf_point, source, layout.remote_offsets, layout.target);
  auto moved = sf_bcast_bytes(world, stage, sf_dof, width, data);

  MigratedBytes out;
  out.data.resize(nranks);
  for (int r = 0; r < nranks; ++r) {
    auto& buf = out.data[r];
    buf.resize(static_cast<std::size_t>(layout.target[r].storage_size()) * width);
    for (PointId i = 0; i < sf_dof[r].nleaves(); ++i) {
      const auto dst = static_cast<std::size_t>(sf_dof[r].leaf(i)) * width;
      std::copy_n(moved[r].begin() + static_cast<std::ptrdiff_t>(i * width), width,
                  buf.begin() + static_cast<std::ptrdiff_t>(dst));
    }
  }
  out.section = std::move(layout.target);
  return out;
}

GlobalNumbering create_global_numbering(CommWorld& world, std::string_view stage,
                                        std::span<const Plex> plex,
                                        std::span<const StarForest> sf_point) {
  require_ranks(world, plex.size(), "meshes");
  require_ranks(world, sf_point.size(), "point SFs");
  const int nranks = world.size();
  GlobalNumbering gn;
  gn.global.resize(nranks);
  gn.owned.resize(nranks);
  std::vector<Bytes> counts(nranks);
  for (int r = 0; r < nranks; ++r) {
    const PointId n = plex[r].size();
    if (sf_point[r].nroots() != n)
      fail(ErrorKind::kInvalidArgument,
           "point SF on rank " + std::to_string(r) + " does not match its mesh size");
    gn.owned[r].assign(n, 1);
    for (PointId i = 0; i < sf_point[r].nleaves(); ++i)
      gn.owned[r][sf_point[r].leaf(i)] = 0;
    const auto owned = static_cast<std::int32_t>(std::count(gn.owned[r].begin(), gn.owned[r].end(), 1));
    append_pod<std::int32_t>(counts[r], owned);
  }
  auto gathered = allgather(world, stage, counts);
  PointId offset = 0;
  for (int r = 0; r < nranks; ++r) {
    auto& g = gn.global[r];
    g.assign(plex[r].size(), -1);
    PointId next = offset;
    for (PointId p = 0; p < plex[r].size(); ++p)
      if (gn.owned[r][p])
        g[p] = next++;
    offset += unpack_pods<std::int32_t>(gathered[r]).at(0);
  }
  sf_bcast_to_leaves<PointId>(world, stage, sf_point, gn.global, gn.global);
  return gn;
}

MigratedMesh migrate_mesh(CommWorld& world, std::string_view stage, std::span<const Plex> source,
                          std::span<const StarForest> sf_migration,
                          const std::vector<std::vector<PointId>>& l2g) {
  require_ranks(world, source.size(), "source meshes");
  require_ranks(world, sf_migration.size(), "migration SFs");
  require_ranks(world, l2g.size(), "local-to-global maps");
  const int nranks = world.size();
  for (int r = 0; r < nranks; ++r) {
    if (sf_migration[r].nroots() != source[r].size())
      fail(ErrorKind::kInvalidArgument,
           "migration SF roots on rank " + std::to_string(r) + " do not match the source mesh");
    if (static_cast<PointId>(l2g[r].size()) != source[r].size())
      fail(ErrorKind::kInvalidArgument,
           "local-to-global map on rank " + std::to_string(r) + " does not match the source mesh");
    require_permutation_leaves(sf_migration[r], r);
  }

  MigratedMesh out;
  out.plex.resize(nranks);
  out.global.resize(nranks);

  // Global ids of the received points.
  auto gid_by_pos = sf_bcast<PointId>(world, stage, sf_migration, l2g);
  std::vector<std::unordered_map<PointId, PointId>> g2l(nranks);
  for (int r = 0; r < nranks; ++r) {
    const auto& sf = sf_migration[r];
    out.global[r].assign(sf.nleaves(), -1);
    for (PointId i = 0; i < sf.nleaves(); ++i)
      out.global[r][sf.leaf(i)] = gid_by_pos[r][i];
    g2l[r].reserve(sf.nleaves());
    for (PointId p = 0; p < sf.nleaves(); ++p)
      if (!g2l[r].emplace(out.global[r][p], p).second)
        fail(ErrorKind::kContractViolation, "rank " + std::to_string(r) +
                                                " received global point " +
                                                std::to_string(out.global[r][p]) + " twice");
  }

  // Cones and orientations share one dof SF.
  std::vector<Section> cone_sec(nranks);
  std::vector<Bytes> cone_data(nranks), orient_data(nranks);
  for (int r = 0; r < nranks; ++r) {
    const auto& plex = source[r];
    Section s(0, plex.size());
    for (PointId p = 0; p < plex.size(); ++p)
      s.set_dof(p, plex.cone_size(p));
    s.setup();
    cone_sec[r] = std::move(s);
    std::vector<PointId> global_cones(plex.cones().size());
    for (std::size_t k = 0; k < global_cones.size(); ++k)
      global_cones[k] = l2g[r][plex.cones()[k]];
    append_pods<PointId>(cone_data[r], global_cones);
    append_pods<std::int32_t>(orient_data[r], plex.orientations());
  }
  auto layout = distribute_section(world, stage, sf_migration, cone_sec);
  auto sf_dof = sf_create_section_sf(world, sf_migration, cone_sec, layout.remote_offsets,
                                     layout.target);
  auto cones_by_pos = sf_bcast_bytes(world, stage, sf_dof, sizeof(PointId), cone_data);
  auto orients_by_pos = sf_bcast_bytes(world, stage, sf_dof, sizeof(std::int32_t), orient_data);

  for (int r = 0; r < nranks; ++r) {
    const PointId n = sf_migration[r].nleaves();
    const auto& target = layout.target[r];
    const auto gcones = unpack_pods<PointId>(cones_by_pos[r]);
    const auto gorients = unpack_pods<std::int32_t>(orients_by_pos[r]);
    std::vector<PointId> cones(target.storage_size());
    std::vector<std::int32_t> orients(target.storage_size());
    for (PointId i = 0; i < sf_dof[r].nleaves(); ++i) {
      auto it = g2l[r].find(gcones[i]);
      if (it == g2l[r].end())
        fail(ErrorKind::kIncompleteClosure,
             "rank " + std::to_string(r) + " received a cone referencing global point " +
                 std::to_string(gcones[i]) + " which it did not receive");
      cones[sf_dof[r].leaf(i)] = it->second;
      orients[sf_dof[r].leaf(i)] = gorients[i];
    }
    std::vector<std::int32_t> sizes(n);
    for (PointId p = 0; p < n; ++p)
      sizes[p] = target.dof(p);
    out.plex[r] = Plex::build(std::move(sizes), std::move(cones), std::move(orients));
  }

  std::vector<Bytes> meta(nranks);
  for (int r = 0; r < nranks; ++r)
    meta[r] = pack_metadata(source[r]);
  const auto [cdim, names] = merge_metadata(allgather(world, stage, meta));

  if (cdim > 0) {
    std::vector<Section> sec(nranks);
    std::vector<std::vector<double>> coords(nranks);
    for (int r = 0; r < nranks; ++r) {
      const auto& plex = source[r];
      if (plex.num_vertices() > 0 && plex.coordinate_dim() != cdim)
        fail(ErrorKind::kInconsistentLayout, "rank " + std::to_string(r) +
                                                 " has coordinates of dimension " +
                                                 std::to_string(plex.coordinate_dim()) +
                                                 ", expected " + std::to_string(cdim));
      auto [vs, ve] = plex.depth_stratum(0);
      Section s(0, plex.size());
      for (PointId v = vs; v < ve; ++v)
        s.set_dof(v, cdim);
      s.setup();
      sec[r] = std::move(s);
      coords[r].assign(plex.coordinates().begin(), plex.coordinates().end());
    }
    auto moved = migrate_data<double>(world, stage, sf_migration, sec, coords);
    for (int r = 0; r < nranks; ++r) {
      auto& plex = out.plex[r];
      const auto& s = moved.section[r];
      auto [vs, ve] = plex.depth_stratum(0);
      std::vector<double> flat;
      flat.reserve(static_cast<std::size_t>(ve - vs) * cdim);
      for (PointId v = vs; v < ve; ++v) {
        if (s.dof(v) != cdim)
          fail(ErrorKind::kInconsistentLayout,
               "vertex " + std::to_string(v) + " on rank " + std::to_string(r) +
                   " received " + std::to_string(s.dof(v)) + " coordinates");
        auto first = moved.data[r].begin() + s.offset(v);
        flat.insert(flat.end(), first, first + cdim);
      }
      plex.set_coordinates(cdim, std::move(flat));
    }
  }

  for (const auto& name : names) {
    std::vector<Section> sec(nranks);
    std::vector<std::vector<std::int32_t>> values(nranks);
    for (int r = 0; r < nranks; ++r) {
      const auto& plex = source[r];
      const auto& label = plex.label(name);
      std::vector<std::vector<std::int32_t>> per_point(plex.size());
      for (const auto& [value, pts] : label.strata())
        for (auto p : pts)
          per_point[p].push_back(value);
      Section s(0, plex.size());
      for (PointId p = 0; p < plex.size(); ++p) {
        s.set_dof(p, static_cast<std::int32_t>(per_point[p].size()));
        values[r].insert(values[r].end(), per_point[p].begin(), per_point[p].end());
      }
      s.setup();
      sec[r] = std::move(s);
    }
    auto moved = migrate_data<std::int32_t>(world, stage, sf_migration, sec, values);
    for (int r = 0; r < nranks; ++r) {
      Label label;
      const auto& s = moved.section[r];
      for (PointId p = s.chart_start(); p < s.chart_end(); ++p)
        for (std::int32_t k = 0; k < s.dof(p); ++k)
          label.insert(moved.data[r][s.offset(p) + k], p);
      out.plex[r].set_label(name, std::move(label));
    }
  }
  return out;
}

DistributedSF migrate_sf(CommWorld& world, std::string_view stage,
                         std::span<const StarForest> sf_migration, OwnershipPolicy policy) {
  require_ranks(world, sf_migration.size(), "migration SFs");
  const int nranks = world.size();
  std::vector<std::vector<RemotePoint>> bids(nranks), roots(nranks);
  for (int r = 0; r < nranks; ++r) {
    const auto& sf = sf_migration[r];
    roots[r].assign(sf.nroots(), RemotePoint{-1, -1});
    bids[r].resize(sf.nleaves());
    for (PointId i = 0; i < sf.nleaves(); ++i) {
      const bool bid = policy == OwnershipPolicy::kHighestRank || sf.remote(i).rank == r;
      bids[r][i] = bid ? RemotePoint{r, sf.leaf(i)} : RemotePoint{-1, -1};
    }
  }
  sf_reduce<RemotePoint>(world, stage, sf_migration, bids, roots, ReduceOp::kMaxLoc);
  auto owners = sf_bcast<RemotePoint>(world, stage, sf_migration, roots);

  DistributedSF out(nranks);
  for (int r = 0; r < nranks; ++r) {
    const auto& sf = sf_migration[r];
    std::vector<RemotePoint> owner_of(sf.leaf_space(), RemotePoint{r, -1});
    for (PointId i = 0; i < sf.nleaves(); ++i) {
      if (owners[r][i].rank < 0)
        fail(ErrorKind::kContractViolation, "point " + std::to_string(sf.leaf(i)) + " on rank " +
                                                std::to_string(r) + " received no ownership bid");
      owner_of[sf.leaf(i)] = owners[r][i];
    }
    std::vector<PointId> leaves;
    std::vector<RemotePoint> remotes;
    for (PointId p = 0; p < sf.leaf_space(); ++p)
      if (owner_of[p].rank != r) {
        leaves.push_back(p);
        remotes.push_back(owner_of[p]);
      }
    out[r] = StarForest(sf.leaf_space(), std::move(leaves), std::move(remotes));
  }
  return out;
}

} // namespace plexdist
