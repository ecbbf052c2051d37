#pragma once

#include "plexdist/comm.hpp"
#include "plexdist/error.hpp"
#include "plexdist/section.hpp"
#include "plexdist/types.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace plexdist {

/// One-sided sharing graph on a single rank: leaf i is the local index
/// leaf(i) and references the root remote(i) on another (or the same) rank.
/// Only the leaf side is stored; collectives derive the root side.
class StarForest {
public:
  StarForest() = default;

  /// An empty `leaves` vector means the identity leaf set 0..remotes.size()-1.
  StarForest(PointId nroots, std::vector<PointId> leaves, std::vector<RemotePoint> remotes);

  PointId nroots() const { return nroots_; }
  PointId nleaves() const { return static_cast<PointId>(remotes_.size()); }
  bool identity_leaves() const { return leaves_.empty(); }

  PointId leaf(PointId i) const { return leaves_.empty() ? i : leaves_[i]; }
  const RemotePoint& remote(PointId i) const { return remotes_[i]; }
  std::span<const RemotePoint> remotes() const { return remotes_; }
  /// Materialized leaf indices, in leaf order.
  std::vector<PointId> leaves() const;
  /// One past the largest leaf index (0 when there are no leaves).
  PointId leaf_space() const { return leaf_space_; }

  friend bool operator==(const StarForest&, const StarForest&) = default;

private:
  PointId nroots_ = 0;
  std::vector<PointId> leaves_;
  std::vector<RemotePoint> remotes_;
  PointId leaf_space_ = 0;
};

/// A star forest described across all ranks, indexed by rank.
using DistributedSF = std::vector<StarForest>;

/// Validates leaf uniqueness and remote ranks against `nranks`.
StarForest sf_set_graph(PointId nroots, std::vector<PointId> leaves,
                        std::vector<RemotePoint> remotes, int nranks);

/// Collective check that every remote index lies within its root rank's
/// root space. Throws kInvalidArgument otherwise.
void sf_validate(std::span<const StarForest> sf);

/// Root rank i, per rank: the leaf -> rank complete process graph.
DistributedSF sf_process_graph(int nranks);

/// Broadcast fixed-width root items to leaves. Input: per rank, nroots*width
/// bytes. Output: per rank, nleaves*width bytes in leaf order. Logs exactly
/// sum(nleaves)*width bytes.
std::vector<Bytes> sf_bcast_bytes(CommWorld& world, std::string_view stage,
                                  std::span<const StarForest> sf, std::size_t width,
                                  std::span<const Bytes> root_data);

/// Leaf-to-root transfer without combining: per rank, the contributions
/// arriving at each root in (source rank, leaf order). Width as above.
struct RootContributions {
  std::vector<PointId> roots;
  Bytes data;
};
std::vector<RootContributions> sf_gather_to_roots_bytes(CommWorld& world, std::string_view stage,
                                                        std::span<const StarForest> sf,
                                                        std::size_t width,
                                                        std::span<const Bytes> leaf_data);

enum class ReduceOp { kSum, kReplace, kMaxLoc };

namespace detail {
void check_rank_count(const CommWorld& world, std::span<const StarForest> sf);
} // namespace detail

/// Typed broadcast; result indexed by leaf position.
template <class T>
std::vector<std::vector<T>> sf_bcast(CommWorld& world, std::string_view stage,
                                     std::span<const StarForest> sf,
                                     const std::vector<std::vector<T>>& root_data) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::vector<Bytes> roots(root_data.size());
  for (std::size_t r = 0; r < root_data.size(); ++r)
    append_pods<T>(roots[r], root_data[r]);
  auto leaves = sf_bcast_bytes(world, stage, sf, sizeof(T), roots);
  std::vector<std::vector<T>> out(leaves.size());
  for (std::size_t r = 0; r < leaves.size(); ++r)
    out[r] = unpack_pods<T>(leaves[r]);
  return out;
}

/// Typed broadcast writing each item at its leaf index of `leaf_data`,
/// leaving non-leaf entries untouched.
template <class T>
void sf_bcast_to_leaves(CommWorld& world, std::string_view stage, std::span<const StarForest> sf,
                        const std::vector<std::vector<T>>& root_data,
                        std::vector<std::vector<T>>& leaf_data) {
  auto by_position = sf_bcast<T>(world, stage, sf, root_data);
  if (leaf_data.size() != sf.size())
    fail(ErrorKind::kInvalidArgument, "leaf data must hold one array per rank");
  for (std::size_t r = 0; r < sf.size(); ++r) {
    if (static_cast<PointId>(leaf_data[r].size()) < sf[r].leaf_space())
      fail(ErrorKind::kInvalidArgument, "leaf array on rank " + std::to_string(r) +
                                            " is smaller than the leaf space");
    for (PointId i = 0; i < sf[r].nleaves(); ++i)
      leaf_data[r][sf[r].leaf(i)] = by_position[r][i];
  }
}

/// Combine leaf values (indexed by leaf position) into caller-initialized
/// root arrays. The initial root value participates; for kMaxLoc, seed the
/// roots with {-1, -1} to exclude it. Contributions are applied in
/// (source rank, leaf order), so kReplace keeps the last one.
template <class T>
void sf_reduce(CommWorld& world, std::string_view stage, std::span<const StarForest> sf,
               const std::vector<std::vector<T>>& leaf_values,
               std::vector<std::vector<T>>& root_data, ReduceOp op) {
  static_assert(std::is_trivially_copyable_v<T>);
  switch (op) {
  case ReduceOp::kSum:
    if constexpr (!std::is_arithmetic_v<T>)
      fail(ErrorKind::kInvalidArgument, "SUM reduction requires an arithmetic item type");
    break;
  case ReduceOp::kMaxLoc:
    if constexpr (!std::is_same_v<T, RemotePoint>)
      fail(ErrorKind::kInvalidArgument, "MAXLOC reduction requires (rank, index) items");
    break;
  case ReduceOp::kReplace:
    break;
  default:
    fail(ErrorKind::kInvalidArgument, "unknown reduction op");
  }
  detail::check_rank_count(world, sf);
  if (root_data.size() != sf.size() || leaf_values.size() != sf.size())
    fail(ErrorKind::kInvalidArgument, "reduce requires one root and leaf array per rank");
  std::vector<Bytes> leaves(sf.size());
  for (std::size_t r = 0; r < sf.size(); ++r) {
    if (static_cast<PointId>(leaf_values[r].size()) != sf[r].nleaves())
      fail(ErrorKind::kInvalidArgument, "leaf value count mismatch on rank " + std::to_string(r));
    if (static_cast<PointId>(root_data[r].size()) != sf[r].nroots())
      fail(ErrorKind::kInvalidArgument, "root array size mismatch on rank " + std::to_string(r));
    append_pods<T>(leaves[r], leaf_values[r]);
  }
  auto contributions = sf_gather_to_roots_bytes(world, stage, sf, sizeof(T), leaves);
  for (std::size_t r = 0; r < sf.size(); ++r) {
    const auto values = unpack_pods<T>(contributions[r].data);
    const auto& roots = contributions[r].roots;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      T& target = root_data[r][roots[k]];
      const T& value = values[k];
      if (op == ReduceOp::kReplace) {
        target = value;
      } else if (op == ReduceOp::kSum) {
        if constexpr (std::is_arithmetic_v<T>)
          target = static_cast<T>(target + value);
      } else if constexpr (std::is_same_v<T, RemotePoint>) {
        if (target < value)
          target = value;
      }
    }
  }
}

/// Sharer information for roots: degree(p) leaves reference root p, and
/// their ranks (ascending) are stored contiguously at degree.offset(p).
struct RootInfo {
  Section degree;
  std::vector<int> leaf_ranks;
};

/// Each leaf reports its root index to the root's rank (4 bytes per leaf).
std::vector<RootInfo> sf_compute_ownership(CommWorld& world, std::string_view stage,
                                           std::span<const StarForest> sf);

/// Push a point SF forward along a Section: every dof of a point leaf
/// becomes a dof leaf referencing the matching dof of the remote point.
/// `remote_offsets[r][i]` is the root offset for leaf position i on rank r.
/// Purely local; the dof count of every leaf point is checked against its
/// root point's dof count in `sec_source`.
DistributedSF sf_create_section_sf(const CommWorld& world, std::span<const StarForest> sf_point,
                                   std::span<const Section> sec_source,
                                   const std::vector<std::vector<std::int32_t>>& remote_offsets,
                                   std::span<const Section> sec_target);

} // namespace plexdist
