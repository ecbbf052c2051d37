#include "plexdist/star_forest.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace plexdist {

StarForest::StarForest(PointId nroots, std::vector<PointId> leaves,
                       std::vector<RemotePoint> remotes)
    : nroots_(nroots), leaves_(std::move(leaves)), remotes_(std::move(remotes)) {
  if (nroots < 0)
    fail(ErrorKind::kInvalidArgument, "negative root count");
  if (!leaves_.empty() && leaves_.size() != remotes_.size())
    fail(ErrorKind::kInvalidArgument, "leaf and remote lists differ in length");
  if (leaves_.empty()) {
    leaf_space_ = static_cast<PointId>(remotes_.size());
  } else {
    for (auto l : leaves_) {
      if (l < 0)
        fail(ErrorKind::kInvalidArgument, "negative leaf index " + std::to_string(l));
      leaf_space_ = std::max(leaf_space_, l + 1);
    }
  }
}

std::vector<PointId> StarForest::leaves() const {
  if (!leaves_.empty())
    return leaves_;
  std::vector<PointId> out(remotes_.size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

StarForest sf_set_graph(PointId nroots, std::vector<PointId> leaves,
                        std::vector<RemotePoint> remotes, int nranks) {
  std::unordered_set<PointId> seen;
  for (auto l : leaves)
    if (!seen.insert(l).second)
      fail(ErrorKind::kInvalidArgument, "duplicate leaf index " + std::to_string(l));
  for (const auto& rp : remotes) {
    if (rp.rank < 0 || rp.rank >= nranks)
      fail(ErrorKind::kInvalidArgument, "remote rank " + std::to_string(rp.rank) +
                                            " outside [0, " + std::to_string(nranks) + ")");
    if (rp.index < 0)
      fail(ErrorKind::kInvalidArgument, "negative remote index");
  }
  return StarForest(nroots, std::move(leaves), std::move(remotes));
}

void sf_validate(std::span<const StarForest> sf) {
  const auto nranks = static_cast<int>(sf.size());
  for (int r = 0; r < nranks; ++r)
    for (const auto& rp : sf[r].remotes()) {
      if (rp.rank < 0 || rp.rank >= nranks)
        fail(ErrorKind::kInvalidArgument, "remote rank " + std::to_string(rp.rank) +
                                              " outside [0, " + std::to_string(nranks) + ")");
      if (rp.index < 0 || rp.index >= sf[rp.rank].nroots())
        fail(ErrorKind::kInvalidArgument,
             "remote index " + std::to_string(rp.index) + " outside the root space of rank " +
                 std::to_string(rp.rank));
    }
}

DistributedSF sf_process_graph(int nranks) {
  DistributedSF sf(nranks);
  for (int r = 0; r < nranks; ++r) {
    std::vector<RemotePoint> remotes(nranks);
    for (int p = 0; p < nranks; ++p)
      remotes[p] = RemotePoint{p, r};
    sf[r] = StarForest(nranks, {}, std::move(remotes));
  }
  return sf;
}

namespace detail {
void check_rank_count(const CommWorld& world, std::span<const StarForest> sf) {
  if (static_cast<int>(sf.size()) != world.size())
    fail(ErrorKind::kContractViolation, "star forest collective needs one graph per rank");
}
} // namespace detail

std::vector<Bytes> sf_bcast_bytes(CommWorld& world, std::string_view stage,
                                  std::span<const StarForest> sf, std::size_t width,
                                  std::span<const Bytes> root_data) {
  detail::check_rank_count(world, sf);
  const int nranks = world.size();
  if (static_cast<int>(root_data.size()) != nranks)
    fail(ErrorKind::kContractViolation, "broadcast needs root data from every rank");
  for (int r = 0; r < nranks; ++r)
    if (root_data[r].size() != static_cast<std::size_t>(sf[r].nroots()) * width)
      fail(ErrorKind::kInvalidArgument,
           "root data on rank " + std::to_string(r) + " holds " +
               std::to_string(root_data[r].size()) + " bytes, expected nroots*width = " +
               std::to_string(static_cast<std::size_t>(sf[r].nroots()) * width));
  sf_validate(sf);

  // Root rank s packs, for each leaf rank r, the items of r's leaves that
  // reference s, in r's leaf order.
  std::vector<std::vector<Bytes>> packed(nranks, std::vector<Bytes>(nranks));
  for (int r = 0; r < nranks; ++r)
    for (const auto& rp : sf[r].remotes()) {
      auto& buf = packed[rp.rank][r];
      const auto* item = root_data[rp.rank].data() + static_cast<std::size_t>(rp.index) * width;
      buf.insert(buf.end(), item, item + width);
    }

  std::vector<std::vector<Message>> outboxes(nranks);
  for (int s = 0; s < nranks; ++s)
    for (int r = 0; r < nranks; ++r)
      if (!packed[s][r].empty())
        outboxes[s].push_back(Message{r, 0, std::move(packed[s][r])});
  auto inboxes = world.exchange(stage, std::move(outboxes));

  std::vector<Bytes> leaf_data(nranks);
  for (int r = 0; r < nranks; ++r) {
    std::vector<const Bytes*> from(nranks, nullptr);
    for (const auto& d : inboxes[r])
      from[d.source] = &d.payload;
    std::vector<std::size_t> cursor(nranks, 0);
    auto& out = leaf_data[r];
    out.resize(static_cast<std::size_t>(sf[r].nleaves()) * width);
    for (PointId i = 0; i < sf[r].nleaves(); ++i) {
      const int s = sf[r].remote(i).rank;
      const auto* src = from[s]->data() + cursor[s];
      std::copy(src, src + width, out.begin() + static_cast<std::ptrdiff_t>(i * width));
      cursor[s] += width;
    }
  }
  return leaf_data;
}

std::vector<RootContributions> sf_gather_to_roots_bytes(CommWorld& world, std::string_view stage,
                                                        std::span<const StarForest> sf,
                                                        std::size_t width,
                                                        std::span<const Bytes> leaf_data) {
  detail::check_rank_count(world, sf);
  const int nranks = world.size();
  for (int r = 0; r < nranks; ++r)
    if (leaf_data[r].size() != static_cast<std::size_t>(sf[r].nleaves()) * width)
      fail(ErrorKind::kInvalidArgument, "leaf data width mismatch on rank " + std::to_string(r));
  sf_validate(sf);

  std::vector<std::vector<Message>> outboxes(nranks);
  for (int r = 0; r < nranks; ++r) {
    std::vector<Bytes> packed(nranks);
    for (PointId i = 0; i < sf[r].nleaves(); ++i) {
      const auto* item = leaf_data[r].data() + static_cast<std::size_t>(i) * width;
      auto& buf = packed[sf[r].remote(i).rank];
      buf.insert(buf.end(), item, item + width);
    }
    for (int s = 0; s < nranks; ++s)
      if (!packed[s].empty())
        outboxes[r].push_back(Message{s, 0, std::move(packed[s])});
  }
  auto inboxes = world.exchange(stage, std::move(outboxes));

  // The target root of each incoming item follows the sender's leaf order.
  std::vector<RootContributions> out(nranks);
  for (int s = 0; s < nranks; ++s) {
    for (const auto& d : inboxes[s]) {
      for (const auto& rp : sf[d.source].remotes())
        if (rp.rank == s)
          out[s].roots.push_back(rp.index);
      out[s].data.insert(out[s].data.end(), d.payload.begin(), d.payload.end());
    }
  }
  return out;
}

std::vector<RootInfo> sf_compute_ownership(CommWorld& world, std::string_view stage,
                                           std::span<const StarForest> sf) {
  detail::check_rank_count(world, sf);
  const int nranks = world.size();
  sf_validate(sf);

  std::vector<std::vector<Message>> outboxes(nranks);
  for (int r = 0; r < nranks; ++r) {
    std::vector<Bytes> packed(nranks);
    for (const auto& rp : sf[r].remotes())
      append_pod<std::int32_t>(packed[rp.rank], rp.index);
    for (int s = 0; s < nranks; ++s)
      if (!packed[s].empty())
        outboxes[r].push_back(Message{s, 0, std::move(packed[s])});
  }
  auto inboxes = world.exchange(stage, std::move(outboxes));

  std::vector<RootInfo> info(nranks);
  for (int s = 0; s < nranks; ++s) {
    auto& ri = info[s];
    ri.degree = Section(0, sf[s].nroots());
    std::vector<std::pair<PointId, int>> incoming;
    for (const auto& d : inboxes[s])
      for (auto q : unpack_pods<std::int32_t>(d.payload)) {
        ri.degree.add_dof(q, 1);
        incoming.emplace_back(q, d.source);
      }
    ri.degree.setup();
    // Inbox order is ascending by source, so a stable sort by root keeps
    // each root's ranks ascending.
    std::stable_sort(incoming.begin(), incoming.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    ri.leaf_ranks.reserve(incoming.size());
    for (const auto& [q, rank] : incoming)
      ri.leaf_ranks.push_back(rank);
  }
  return info;
}

DistributedSF sf_create_section_sf(const CommWorld& world, std::span<const StarForest> sf_point,
                                   std::span<const Section> sec_source,
                                   const std::vector<std::vector<std::int32_t>>& remote_offsets,
                                   std::span<const Section> sec_target) {
  detail::check_rank_count(world, sf_point);
  const int nranks = world.size();
  if (static_cast<int>(sec_source.size()) != nranks ||
      static_cast<int>(sec_target.size()) != nranks ||
      static_cast<int>(remote_offsets.size()) != nranks)
    fail(ErrorKind::kContractViolation, "section SF creation needs per-rank sections");

  DistributedSF sf_dof(nranks);
  for (int r = 0; r < nranks; ++r) {
    const auto& sf = sf_point[r];
    const auto& target = sec_target[r];
    if (static_cast<PointId>(remote_offsets[r].size()) != sf.nleaves())
      fail(ErrorKind::kInvalidArgument, "remote offsets must cover every leaf");
    std::vector<PointId> leaves;
    std::vector<RemotePoint> remotes;
    for (PointId i = 0; i < sf.nleaves(); ++i) {
      const PointId p = sf.leaf(i);
      const auto& rp = sf.remote(i);
      const auto ndof = target.dof(p);
      // Layout contract: both sides of a shared point must agree on its size.
      const auto remote_dof = sec_source[rp.rank].dof(rp.index);
      if (ndof != remote_dof)
        fail(ErrorKind::kInconsistentLayout,
             "rank " + std::to_string(r) + " leaf point " + std::to_string(p) + " has " +
                 std::to_string(ndof) + " dofs but its root (" + std::to_string(rp.index) +
                 " on rank " + std::to_string(rp.rank) + ") has " + std::to_string(remote_dof));
      const auto off = target.offset(p);
      for (std::int32_t k = 0; k < ndof; ++k) {
        leaves.push_back(off + k);
        remotes.push_back(RemotePoint{rp.rank, remote_offsets[r][i] + k});
      }
    }
    sf_dof[r] = StarForest(sec_source[r].storage_size(), std::move(leaves), std::move(remotes));
  }
  return sf_dof;
}

} // namespace plexdist
