#include "plexdist/label.hpp"

#include "plexdist/error.hpp"

#include <string>

namespace plexdist {

void Label::insert(int value, PointId p) { strata_[value].insert(p); }

void Label::insert(int value, std::span<const PointId> points) {
  if (points.empty())
    return;
  strata_[value].insert(points.begin(), points.end());
}

void Label::erase(int value, PointId p) {
  auto it = strata_.find(value);
  if (it == strata_.end())
    return;
  it->second.erase(p);
  if (it->second.empty())
    strata_.erase(it);
}

void Label::clear_value(int value) { strata_.erase(value); }

bool Label::contains(int value, PointId p) const {
  auto it = strata_.find(value);
  return it != strata_.end() && it->second.contains(p);
}

std::vector<PointId> Label::stratum(int value) const {
  auto it = strata_.find(value);
  if (it == strata_.end())
    return {};
  return {it->second.begin(), it->second.end()};
}

std::size_t Label::stratum_size(int value) const {
  auto it = strata_.find(value);
  return it == strata_.end() ? 0 : it->second.size();
}

std::vector<int> Label::values() const {
  std::vector<int> out;
  for (const auto& [v, points] : strata_)
    out.push_back(v);
  return out;
}

std::vector<int> Label::values_of(PointId p) const {
  std::vector<int> out;
  for (const auto& [v, points] : strata_)
    if (points.contains(p))
      out.push_back(v);
  return out;
}

std::size_t Label::num_entries() const {
  std::size_t n = 0;
  for (const auto& [v, points] : strata_)
    n += points.size();
  return n;
}

std::pair<Section, std::vector<PointId>>
label_to_section(const Label& label, std::optional<std::pair<int, int>> chart) {
  int start = 0;
  int end = 0;
  if (chart) {
    std::tie(start, end) = *chart;
  } else if (!label.empty()) {
    start = label.strata().begin()->first;
    end = label.strata().rbegin()->first + 1;
  }
  Section section(start, end);
  std::vector<PointId> points;
  points.reserve(label.num_entries());
  for (const auto& [value, stratum] : label.strata()) {
    if (!section.in_chart(value))
      fail(ErrorKind::kInvalidArgument,
           "label value " + std::to_string(value) + " outside requested chart");
    section.set_dof(value, static_cast<std::int32_t>(stratum.size()));
    points.insert(points.end(), stratum.begin(), stratum.end());
  }
  section.setup();
  return {std::move(section), std::move(points)};
}

Label label_from_section(const Section& section, std::span<const PointId> points) {
  if (static_cast<std::size_t>(section.storage_size()) != points.size())
    fail(ErrorKind::kInconsistentLayout, "section storage size " +
                                             std::to_string(section.storage_size()) +
                                             " does not match " + std::to_string(points.size()) +
                                             " points");
  Label label;
  for (PointId v = section.chart_start(); v < section.chart_end(); ++v) {
    const auto off = section.offset(v);
    label.insert(v, points.subspan(off, section.dof(v)));
  }
  return label;
}

} // namespace plexdist
