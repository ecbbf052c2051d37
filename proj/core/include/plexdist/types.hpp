#pragma once

#include <compare>
#include <cstdint>
#include <type_traits>

namespace plexdist {

/// Mesh point id within a local chart. Serialized as 4 bytes.
using PointId = std::int32_t;

/// Reference to a point (or any root item) living on another rank.
/// Ordered by rank first, then index, which is the MAXLOC ordering.
struct RemotePoint {
  std::int32_t rank = -1;
  std::int32_t index = -1;

  friend auto operator<=>(const RemotePoint&, const RemotePoint&) = default;
};

static_assert(sizeof(RemotePoint) == 8);
static_assert(std::is_trivially_copyable_v<RemotePoint>);

} // namespace plexdist
