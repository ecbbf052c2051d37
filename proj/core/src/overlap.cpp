#include "plexdist/overlap.hpp"

#include "plexdist/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace plexdist {

Label partition_label_adjacency(const Plex& plex, const Label& label, Adjacency kind) {
  Label out;
  for (const auto& [value, pts] : label.strata()) {
    std::vector<PointId> grown(pts.begin(), pts.end());
    for (auto p : pts) {
      auto adj = plex.adjacency(p, kind);
      grown.insert(grown.end(), adj.begin(), adj.end());
    }
    out.insert(value, grown);
  }
  return out;
}

std::vector<Label> create_overlap(CommWorld& world, std::string_view stage,
                                  std::span<const Plex> plex, std::span<const StarForest> point_sf,
                                  int levels, Adjacency kind) {
  if (levels < 1)
    fail(ErrorKind::kInvalidArgument, "overlap needs at least one level, got " +
                                          std::to_string(levels));
  const int nranks = world.size();
  if (static_cast<int>(plex.size()) != nranks || static_cast<int>(point_sf.size()) != nranks)
    fail(ErrorKind::kContractViolation, "overlap needs one mesh and SF per rank");

  // Root side: which ranks hold a copy of each owned point.
  auto info = sf_compute_ownership(world, stage, point_sf);
  // Leaf side: the same list, pushed from the owner to every copy.
  std::vector<Section> degree(nranks);
  std::vector<std::vector<std::int32_t>> ranks(nranks);
  for (int r = 0; r < nranks; ++r) {
    degree[r] = info[r].degree;
    ranks[r].assign(info[r].leaf_ranks.begin(), info[r].leaf_ranks.end());
  }
  auto sharers = migrate_data<std::int32_t>(world, stage, point_sf, degree, ranks);

  std::vector<Label> out(nranks);
  for (int r = 0; r < nranks; ++r) {
    const auto& mesh = plex[r];
    const auto& sf = point_sf[r];
    Label ol;
    auto donate = [&](PointId p, const std::set<int>& targets) {
      if (targets.empty())
        return;
      const auto adj = mesh.adjacency(p, kind);
      for (auto t : targets)
        ol.insert(t, adj);
    };
    // Receive connections: ghosts donate to their owner and fellow holders.
    const auto& sec = sharers.section[r];
    for (PointId i = 0; i < sf.nleaves(); ++i) {
      const auto p = sf.leaf(i);
      std::set<int> targets{sf.remote(i).rank};
      for (std::int32_t k = 0; k < sec.dof(p); ++k)
        targets.insert(sharers.data[r][sec.offset(p) + k]);
      targets.erase(r);
      donate(p, targets);
    }
    // Send connections: owned points donate to every rank holding a copy.
    const auto& root_degree = info[r].degree;
    for (PointId p = 0; p < sf.nroots(); ++p) {
      std::set<int> targets;
      for (std::int32_t k = 0; k < root_degree.dof(p); ++k)
        targets.insert(info[r].leaf_ranks[root_degree.offset(p) + k]);
      targets.erase(r);
      donate(p, targets);
    }
    for (int level = 1; level < levels; ++level)
      ol = partition_label_adjacency(mesh, ol, kind);
    out[r] = partition_label_closure(mesh, ol);
  }
  return out;
}

DistributedSF stratify_migration_sf(CommWorld& world, std::string_view stage,
                                    std::span<const Plex> source, std::span<const StarForest> sf,
                                    std::span<const PointId> nretained) {
  const int nranks = world.size();
  if (static_cast<int>(source.size()) != nranks || static_cast<int>(sf.size()) != nranks)
    fail(ErrorKind::kContractViolation, "stratification needs one mesh and SF per rank");
  if (!nretained.empty() && static_cast<int>(nretained.size()) != nranks)
    fail(ErrorKind::kContractViolation, "retained counts must be given for every rank");

  std::vector<std::vector<std::int32_t>> depth(nranks);
  for (int r = 0; r < nranks; ++r) {
    if (sf[r].nroots() != source[r].size())
      fail(ErrorKind::kInvalidArgument,
           "migration SF roots on rank " + std::to_string(r) + " do not match the source mesh");
    depth[r].resize(source[r].size());
    for (PointId p = 0; p < source[r].size(); ++p)
      depth[r][p] = source[r].depth(p);
  }
  auto leaf_depth = sf_bcast<std::int32_t>(world, stage, sf, depth);

  DistributedSF out(nranks);
  for (int r = 0; r < nranks; ++r) {
    const PointId n = sf[r].nleaves();
    const PointId keep = nretained.empty() ? 0 : nretained[r];
    int dim = -1;
    for (auto d : leaf_depth[r])
      dim = std::max(dim, static_cast<int>(d));
    auto key = [&](PointId i) {
      const int d = leaf_depth[r][i];
      const int stratum = d == dim ? 0 : d == 0 ? 1 : 2 + (dim - 1 - d);
      return std::pair<int, int>{stratum, i < keep ? 0 : 1};
    };
    std::vector<PointId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](PointId a, PointId b) { return key(a) < key(b); });
    std::vector<RemotePoint> remotes(n);
    for (PointId j = 0; j < n; ++j)
      remotes[j] = sf[r].remote(order[j]);
    out[r] = StarForest(sf[r].nroots(), {}, std::move(remotes));
  }
  return out;
}

DistributedMesh distribute_overlap(CommWorld& world, const DistributedMesh& mesh, int levels,
                                   Adjacency kind) {
  const int nranks = world.size();
  const auto stg = stage::kOverlap;
  if (static_cast<int>(mesh.local.size()) != nranks ||
      static_cast<int>(mesh.point_sf.size()) != nranks)
    fail(ErrorKind::kContractViolation, "overlap needs a mesh and SF on every rank");

  auto l2g = mesh.global;
  if (static_cast<int>(l2g.size()) != nranks)
    l2g = create_global_numbering(world, stg, mesh.local, mesh.point_sf).global;

  auto donations = create_overlap(world, stg, mesh.local, mesh.point_sf, levels, kind);
  const auto sf_proc = sf_process_graph(nranks);
  auto inv = partition_label_invert(world, stg, donations, mesh.point_sf, sf_proc);

  // Existing points first, in local order, then new points by owner.
  DistributedSF sf_ol(nranks);
  std::vector<PointId> nretained(nranks);
  for (int r = 0; r < nranks; ++r) {
    auto remotes = owner_refs(mesh.point_sf[r], r);
    nretained[r] = static_cast<PointId>(remotes.size());
    std::set<RemotePoint> held(remotes.begin(), remotes.end());
    std::set<RemotePoint> incoming(inv.points[r].begin(), inv.points[r].end());
    for (const auto& ref : incoming)
      if (!held.contains(ref))
        remotes.push_back(ref);
    sf_ol[r] = StarForest(mesh.local[r].size(), {}, std::move(remotes));
  }
  auto sf = stratify_migration_sf(world, stg, mesh.local, sf_ol, nretained);
  auto mm = migrate_mesh(world, stg, mesh.local, sf, l2g);
  auto psf = migrate_sf(world, stg, sf, OwnershipPolicy::kKeepOwners);
  return DistributedMesh{std::move(mm.plex), std::move(psf), std::move(mm.global)};
}

} // namespace plexdist
