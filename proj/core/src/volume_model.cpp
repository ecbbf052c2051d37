#include "plexdist/volume_model.hpp"

#include <cmath>
#include <limits>

namespace plexdist {

namespace {
constexpr std::uint64_t kIndexBytes = 4;
constexpr std::uint64_t kRealBytes = 8;
} // namespace

VolumePrediction predict_volumes(const StratumCounts& counts) {
  const std::uint64_t n = counts.total();
  VolumePrediction v;
  v.sf = kIndexBytes * n;
  v.inversion = v.sf + 2 * kIndexBytes * n;
  v.stratify = v.sf + kIndexBytes * n;
  v.partition = v.inversion + v.stratify;

  // Simplex cone sizes: 4 faces per tet, 3 edges per triangle, 2 vertices per edge.
  const std::uint64_t cone_entries = 4 * counts.cells + 3 * counts.faces + 2 * counts.edges;
  v.cones = kIndexBytes * cone_entries;
  v.orientations = kIndexBytes * cone_entries;
  v.section = 3 * v.sf + 2 * kIndexBytes * n;
  v.topology = v.cones + v.orientations + v.section;
  v.coordinates = (3 * kRealBytes + 2 * kIndexBytes) * counts.vertices;
  v.markers = 3 * v.sf;
  v.migration = v.topology + v.coordinates + v.markers;
  return v;
}

std::uint64_t predicted_for_stage(const VolumePrediction& prediction, std::string_view name) {
  if (name == stage::kPartition)
    return prediction.partition;
  if (name == stage::kInversion)
    return prediction.inversion;
  if (name == stage::kMigration)
    return prediction.migration;
  return 0;
}

VolumeComparison compare_volumes(std::uint64_t predicted, std::uint64_t measured) {
  VolumeComparison c{predicted, measured, 0.0, false};
  if (predicted == 0) {
    c.mismatch = measured > 0;
    c.relative_error = c.mismatch ? std::numeric_limits<double>::infinity() : 0.0;
    return c;
  }
  const double diff = std::fabs(static_cast<double>(measured) - static_cast<double>(predicted));
  c.relative_error = diff / static_cast<double>(predicted);
  return c;
}

VolumeComparison compare_volumes(const VolumePrediction& prediction, const CommWorld& world,
                                 std::span<const std::string> stages) {
  const auto ledger = world.ledger();
  std::uint64_t predicted = 0;
  std::uint64_t measured = 0;
  for (const auto& s : stages) {
    predicted += predicted_for_stage(prediction, s);
    measured += ledger.total_sent(s);
  }
  return compare_volumes(predicted, measured);
}

} // namespace plexdist
