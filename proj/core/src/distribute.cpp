#include "plexdist/distribute.hpp"

#include "plexdist/error.hpp"
#include "plexdist/overlap.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace plexdist {

Label partition_label_closure(const Plex& plex, const Label& label) {
  Label out;
  for (const auto& [value, pts] : label.strata()) {
    std::vector<PointId> v(pts.begin(), pts.end());
    out.insert(value, plex.closure_of(v));
  }
  return out;
}

Label partition_label_ownership(const Label& label) {
  std::map<PointId, int> owner;
  for (const auto& [value, pts] : label.strata())
    for (auto p : pts)
      owner[p] = value; // values ascend, so the last one wins
  Label out;
  for (const auto& [p, value] : owner)
    out.insert(value, p);
  return out;
}

std::vector<RemotePoint> owner_refs(const StarForest& point_sf, int rank) {
  std::vector<RemotePoint> refs(point_sf.nroots());
  for (PointId p = 0; p < point_sf.nroots(); ++p)
    refs[p] = RemotePoint{rank, p};
  for (PointId i = 0; i < point_sf.nleaves(); ++i) {
    const auto l = point_sf.leaf(i);
    if (l >= point_sf.nroots())
      fail(ErrorKind::kInvalidArgument, "point SF leaf " + std::to_string(l) +
                                            " lies outside the local mesh");
    refs[l] = point_sf.remote(i);
  }
  return refs;
}

InvertedPartition partition_label_invert(CommWorld& world, std::string_view stage,
                                         std::span<const Label> lbl_part,
                                         std::span<const StarForest> point_sf,
                                         std::span<const StarForest> sf_proc) {
  const int nranks = world.size();
  if (static_cast<int>(lbl_part.size()) != nranks ||
      static_cast<int>(point_sf.size()) != nranks)
    fail(ErrorKind::kContractViolation, "partition inversion needs one label and SF per rank");

  std::vector<Section> sections(nranks);
  std::vector<std::vector<RemotePoint>> data(nranks);
  for (int r = 0; r < nranks; ++r) {
    const auto refs = owner_refs(point_sf[r], r);
    Section s(0, nranks);
    for (const auto& [value, pts] : lbl_part[r].strata()) {
      if (value < 0 || value >= nranks)
        fail(ErrorKind::kInvalidArgument, "partition value " + std::to_string(value) +
                                              " is not a rank in [0, " +
                                              std::to_string(nranks) + ")");
      s.set_dof(value, static_cast<std::int32_t>(pts.size()));
      for (auto p : pts) {
        if (p < 0 || p >= static_cast<PointId>(refs.size()))
          fail(ErrorKind::kInvalidArgument, "partition point " + std::to_string(p) +
                                                " outside the mesh on rank " + std::to_string(r));
        data[r].push_back(refs[p]);
      }
    }
    s.setup();
    sections[r] = std::move(s);
  }

  auto moved = migrate_data<RemotePoint>(world, stage, sf_proc, sections, data);
  InvertedPartition out;
  out.label.resize(nranks);
  for (int r = 0; r < nranks; ++r)
    for (const auto& ref : moved.data[r])
      out.label[r].insert(ref.rank, ref.index);
  out.section = std::move(moved.section);
  out.points = std::move(moved.data);
  return out;
}

DistributedSF partition_label_create_sf(std::span<const Label> lbl_mig,
                                        std::span<const PointId> nroots) {
  const auto nranks = static_cast<int>(lbl_mig.size());
  if (static_cast<int>(nroots.size()) != nranks)
    fail(ErrorKind::kContractViolation, "root counts must be given for every rank");
  DistributedSF out(nranks);
  for (int r = 0; r < nranks; ++r) {
    std::vector<RemotePoint> remotes;
    remotes.reserve(lbl_mig[r].num_entries());
    for (const auto& [rank, pts] : lbl_mig[r].strata()) {
      if (rank < 0 || rank >= nranks)
        fail(ErrorKind::kInvalidArgument, "migration label names rank " + std::to_string(rank));
      for (auto p : pts) {
        if (p < 0 || p >= nroots[rank])
          fail(ErrorKind::kInvalidArgument, "migration label point " + std::to_string(p) +
                                                " outside rank " + std::to_string(rank));
        remotes.push_back(RemotePoint{rank, p});
      }
    }
    out[r] = StarForest(nroots[r], {}, std::move(remotes));
  }
  return out;
}

namespace {

std::vector<PointId> sizes_of(std::span<const Plex> plex) {
  std::vector<PointId> n;
  for (const auto& p : plex)
    n.push_back(p.size());
  return n;
}

// Closure -> inversion -> migration SF -> stratify -> mesh -> point SF.
DistributedMesh migrate_by_partition(CommWorld& world, std::string_view inversion_stage,
                                     std::string_view migration_stage,
                                     std::span<const Plex> source,
                                     std::span<const StarForest> point_sf,
                                     const std::vector<Label>& cell_labels,
                                     const std::vector<std::vector<PointId>>& l2g) {
  const int nranks = world.size();
  std::vector<Label> closed(nranks);
  for (int r = 0; r < nranks; ++r)
    closed[r] = partition_label_closure(source[r], cell_labels[r]);
  const auto sf_proc = sf_process_graph(nranks);
  auto inv = partition_label_invert(world, inversion_stage, closed, point_sf, sf_proc);
  const auto nroots = sizes_of(source);
  auto sf = partition_label_create_sf(inv.label, nroots);
  sf = stratify_migration_sf(world, inversion_stage, source, sf);
  auto mm = migrate_mesh(world, migration_stage, source, sf, l2g);
  auto psf = migrate_sf(world, migration_stage, sf, OwnershipPolicy::kHighestRank);
  return DistributedMesh{std::move(mm.plex), std::move(psf), std::move(mm.global)};
}

} // namespace

DistributedMesh distribute(CommWorld& world, const Plex& serial, const Partitioner& partitioner,
                           const DistributeOptions& options) {
  const int nranks = world.size();
  if (options.overlap < 0)
    fail(ErrorKind::kInvalidArgument, "overlap level must be non-negative");
  std::vector<Plex> source(nranks);
  source[0] = serial;
  DistributedSF empty(nranks);
  for (int r = 0; r < nranks; ++r)
    empty[r] = StarForest(source[r].size(), {}, {});
  std::vector<Label> cells(nranks);
  cells[0] = partition(serial, nranks, partitioner);
  std::vector<std::vector<PointId>> l2g(nranks);
  l2g[0].resize(serial.size());
  std::iota(l2g[0].begin(), l2g[0].end(), 0);

  auto out = migrate_by_partition(world, stage::kPartition, stage::kMigration, source, empty,
                                  cells, l2g);
  if (options.overlap > 0)
    out = distribute_overlap(world, out, options.overlap, options.adjacency);
  return out;
}

RedistributeResult redistribute(CommWorld& world, const DistributedMesh& mesh,
                                const Partitioner& partitioner, const DistributeOptions& options) {
  const int nranks = world.size();
  if (static_cast<int>(mesh.local.size()) != nranks ||
      static_cast<int>(mesh.point_sf.size()) != nranks)
    fail(ErrorKind::kContractViolation, "redistribution needs a mesh and SF on every rank");
  if (options.overlap < 0)
    fail(ErrorKind::kInvalidArgument, "overlap level must be non-negative");
  const auto stg = stage::kRedistribution;

  auto gn = create_global_numbering(world, stg, mesh.local, mesh.point_sf);

  // Owned cells travel to rank 0 as (global id, cone size, cone global ids).
  std::vector<std::vector<PointId>> owned_cells(nranks);
  std::vector<std::vector<Message>> outboxes(nranks);
  for (int r = 0; r < nranks; ++r) {
    const auto& plex = mesh.local[r];
    const auto [cs, ce] = plex.depth_stratum(plex.dimension());
    std::vector<PointId> msg;
    for (PointId c = cs; c < ce; ++c) {
      if (!gn.owned[r][c])
        continue;
      owned_cells[r].push_back(c);
      msg.push_back(gn.global[r][c]);
      msg.push_back(plex.cone_size(c));
      for (auto f : plex.cone(c))
        msg.push_back(gn.global[r][f]);
    }
    Bytes payload;
    append_pods<PointId>(payload, msg);
    if (!payload.empty())
      outboxes[r].push_back(Message{0, 0, std::move(payload)});
  }
  auto inbox = world.exchange(stg, std::move(outboxes));

  // Rank 0 assembles the dual graph, cells ordered by (sender, send order).
  std::vector<int> current;
  std::vector<std::vector<PointId>> cell_faces;
  for (const auto& d : inbox[0]) {
    const auto items = unpack_pods<PointId>(d.payload);
    std::size_t k = 0;
    while (k < items.size()) {
      const auto size = items[k + 1];
      cell_faces.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(k + 2),
                              items.begin() + static_cast<std::ptrdiff_t>(k + 2 + size));
      current.push_back(d.source);
      k += 2 + static_cast<std::size_t>(size);
    }
  }
  std::map<PointId, std::vector<std::int32_t>> face_cells;
  for (std::size_t c = 0; c < cell_faces.size(); ++c)
    for (auto f : cell_faces[c])
      face_cells[f].push_back(static_cast<std::int32_t>(c));
  std::vector<std::vector<std::int32_t>> lists(cell_faces.size());
  for (const auto& [f, cells] : face_cells)
    for (auto a : cells)
      for (auto b : cells)
        if (a != b)
          lists[a].push_back(b);
  const auto graph = cell_graph_from_lists(std::move(lists));
  const auto parts = partitioner.partition(graph, nranks, current);
  if (static_cast<std::int32_t>(parts.size()) != graph.ncells())
    fail(ErrorKind::kContractViolation, partitioner.name() + " returned the wrong number of parts");

  // Scatter assignments back in the order the cells arrived.
  std::vector<std::vector<Message>> replies(nranks);
  {
    std::vector<std::vector<std::int32_t>> per_rank(nranks);
    for (std::size_t c = 0; c < parts.size(); ++c) {
      if (parts[c] < 0 || parts[c] >= nranks)
        fail(ErrorKind::kContractViolation, partitioner.name() + " produced part " +
                                                std::to_string(parts[c]));
      per_rank[current[c]].push_back(parts[c]);
    }
    for (int r = 0; r < nranks; ++r)
      if (!per_rank[r].empty()) {
        Bytes payload;
        append_pods<std::int32_t>(payload, per_rank[r]);
        replies[0].push_back(Message{r, 0, std::move(payload)});
      }
  }
  auto assigned = world.exchange(stg, std::move(replies));

  std::vector<Label> cells(nranks);
  for (int r = 0; r < nranks; ++r) {
    if (assigned[r].empty())
      continue;
    const auto targets = unpack_pods<std::int32_t>(assigned[r].front().payload);
    for (std::size_t k = 0; k < owned_cells[r].size(); ++k)
      cells[r].insert(targets[k], owned_cells[r][k]);
  }

  auto out = migrate_by_partition(world, stg, stg, mesh.local, mesh.point_sf, cells, gn.global);
  if (options.overlap > 0)
    out = distribute_overlap(world, out, options.overlap, options.adjacency);
  return RedistributeResult{std::move(out), std::move(gn)};
}

} // namespace plexdist
