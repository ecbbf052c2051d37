#include "plexdist/section.hpp"

#include "plexdist/error.hpp"

#include <string>

namespace plexdist {

Section::Section(PointId start, PointId end) : start_(start), end_(end) {
  if (end < start)
    fail(ErrorKind::kInvalidArgument, "section chart end precedes start");
  dof_.assign(end - start, 0);
  off_.assign(end - start, 0);
}

void Section::check_point(PointId p) const {
  if (!in_chart(p))
    fail(ErrorKind::kInvalidArgument, "point " + std::to_string(p) + " outside section chart [" +
                                          std::to_string(start_) + ", " + std::to_string(end_) +
                                          ")");
}

void Section::set_dof(PointId p, std::int32_t ndof) {
  check_point(p);
  dof_[p - start_] = ndof;
  setup_ = false;
}

void Section::add_dof(PointId p, std::int32_t ndof) {
  check_point(p);
  dof_[p - start_] += ndof;
  setup_ = false;
}

std::int32_t Section::offset(PointId p) const {
  if (!in_chart(p))
    return storage_size_;
  return off_[p - start_];
}

void Section::setup() {
  std::int32_t running = 0;
  for (std::size_t i = 0; i < dof_.size(); ++i) {
    if (dof_[i] < 0)
      fail(ErrorKind::kInvalidArgument, "negative dof " + std::to_string(dof_[i]) + " at point " +
                                            std::to_string(start_ + static_cast<PointId>(i)));
    off_[i] = running;
    running += dof_[i];
  }
  storage_size_ = running;
  setup_ = true;
}

} // namespace plexdist
