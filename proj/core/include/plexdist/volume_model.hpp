#pragma once

#include "plexdist/comm.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plexdist {

/// Point counts per stratum of a 3D mesh (cells, faces, edges, vertices).
struct StratumCounts {
  std::uint64_t cells = 0;
  std::uint64_t faces = 0;
  std::uint64_t edges = 0;
  std::uint64_t vertices = 0;

  std::uint64_t total() const { return cells + faces + edges + vertices; }
};

/// Predicted communication volume, in bytes, of a one-to-all distribution.
/// Indices are 4 bytes and coordinates 8 bytes.
struct VolumePrediction {
  std::uint64_t sf = 0;
  std::uint64_t inversion = 0;
  std::uint64_t stratify = 0;
  std::uint64_t partition = 0;
  std::uint64_t cones = 0;
  std::uint64_t orientations = 0;
  std::uint64_t section = 0;
  std::uint64_t topology = 0;
  std::uint64_t coordinates = 0;
  std::uint64_t markers = 0;
  std::uint64_t migration = 0;
};

VolumePrediction predict_volumes(const StratumCounts& counts);

/// Predicted bytes for a ledger stage: "partition", "inversion" and
/// "migration" map to the matching model terms, anything else to zero.
std::uint64_t predicted_for_stage(const VolumePrediction& prediction, std::string_view stage);

struct VolumeComparison {
  std::uint64_t predicted = 0;
  std::uint64_t measured = 0;
  /// |measured - predicted| / predicted; +inf when predicted is zero and
  /// measured is not.
  double relative_error = 0.0;
  /// Set when the model predicts nothing but bytes were measured.
  bool mismatch = false;
};

VolumeComparison compare_volumes(std::uint64_t predicted, std::uint64_t measured);

/// Measured is the global bytes sent summed over `stages`; predicted is the
/// matching model terms summed over the same stages.
VolumeComparison compare_volumes(const VolumePrediction& prediction, const CommWorld& world,
                                 std::span<const std::string> stages);

} // namespace plexdist
