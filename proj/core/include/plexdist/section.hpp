#pragma once

#include "plexdist/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace plexdist {

/// CSR-style layout of irregular data over a contiguous chart of points:
/// each point carries a dof count and, after setup(), the offset of its
/// block in a packed array. Points outside the chart have zero dofs.
class Section {
public:
  Section() = default;
  Section(PointId start, PointId end);

  PointId chart_start() const { return start_; }
  PointId chart_end() const { return end_; }
  PointId chart_size() const { return end_ - start_; }
  bool in_chart(PointId p) const { return p >= start_ && p < end_; }

  void set_dof(PointId p, std::int32_t ndof);
  void add_dof(PointId p, std::int32_t ndof);
  std::int32_t dof(PointId p) const { return in_chart(p) ? dof_[p - start_] : 0; }

  /// Only meaningful after setup(). Points outside the chart report the
  /// storage size so that empty ranges behave like an end iterator.
  std::int32_t offset(PointId p) const;

  /// Computes offsets as the exclusive prefix sum of dofs. Throws
  /// kInvalidArgument on a negative dof.
  void setup();

  std::int32_t storage_size() const { return storage_size_; }
  bool is_setup() const { return setup_; }

  std::span<const std::int32_t> dofs() const { return dof_; }
  std::span<const std::int32_t> offsets() const { return off_; }

  friend bool operator==(const Section&, const Section&) = default;

private:
  void check_point(PointId p) const;

  PointId start_ = 0;
  PointId end_ = 0;
  std::vector<std::int32_t> dof_;
  std::vector<std::int32_t> off_;
  std::int32_t storage_size_ = 0;
  bool setup_ = false;
};

} // namespace plexdist
