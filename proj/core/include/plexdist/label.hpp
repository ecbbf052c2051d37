#pragma once

#include "plexdist/section.hpp"
#include "plexdist/types.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace plexdist {

/// One-to-many map from integer values to sorted, duplicate-free point sets.
class Label {
public:
  /// Idempotent.
  void insert(int value, PointId p);
  void insert(int value, std::span<const PointId> points);
  void erase(int value, PointId p);
  void clear_value(int value);

  bool contains(int value, PointId p) const;
  /// Ascending points carrying `value`; empty for unknown values.
  std::vector<PointId> stratum(int value) const;
  std::size_t stratum_size(int value) const;
  /// Values with at least one point, ascending.
  std::vector<int> values() const;
  /// Values carried by `p`, ascending.
  std::vector<int> values_of(PointId p) const;

  bool empty() const { return strata_.empty(); }
  std::size_t num_entries() const;

  const std::map<int, std::set<PointId>>& strata() const { return strata_; }

  friend bool operator==(const Label&, const Label&) = default;

private:
  std::map<int, std::set<PointId>> strata_;
};

/// Packs a label into a Section over values plus the concatenated points in
/// ascending value order. The chart defaults to [min value, max value + 1).
std::pair<Section, std::vector<PointId>>
label_to_section(const Label& label, std::optional<std::pair<int, int>> chart = std::nullopt);

Label label_from_section(const Section& section, std::span<const PointId> points);

} // namespace plexdist
