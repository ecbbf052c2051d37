#include "plexdist/comm.hpp"

#include "plexdist/error.hpp"

#include <algorithm>

namespace plexdist {

void VolumeLedger::record(std::string_view stage, int source, int dest, std::uint64_t bytes) {
  auto it = stages_.find(stage);
  if (it == stages_.end())
    it = stages_.emplace(std::string(stage), std::vector<RankVolume>(nranks_)).first;
  it->second[source].sent += bytes;
  it->second[dest].received += bytes;
}

std::vector<RankVolume> VolumeLedger::stage_volumes(std::string_view stage) const {
  auto it = stages_.find(stage);
  if (it == stages_.end())
    return std::vector<RankVolume>(nranks_);
  return it->second;
}

std::vector<std::string> VolumeLedger::stages() const {
  std::vector<std::string> names;
  for (const auto& [name, volumes] : stages_)
    names.push_back(name);
  return names;
}

std::uint64_t VolumeLedger::total_sent(std::string_view stage) const {
  std::uint64_t total = 0;
  for (const auto& v : stage_volumes(stage))
    total += v.sent;
  return total;
}

std::uint64_t VolumeLedger::total_received(std::string_view stage) const {
  std::uint64_t total = 0;
  for (const auto& v : stage_volumes(stage))
    total += v.received;
  return total;
}

CommWorld::CommWorld(int size) : size_(size), ledger_(size) {
  if (size < 1)
    fail(ErrorKind::kInvalidArgument, "communicator size must be at least 1");
}

std::vector<std::vector<Delivered>> CommWorld::exchange(std::string_view stage,
                                                        std::vector<std::vector<Message>> outboxes) {
  if (static_cast<int>(outboxes.size()) != size_)
    fail(ErrorKind::kContractViolation, "exchange requires one outbox per rank (got " +
                                            std::to_string(outboxes.size()) + " for " +
                                            std::to_string(size_) + " ranks)");
  for (const auto& box : outboxes)
    for (const auto& m : box)
      if (m.dest < 0 || m.dest >= size_)
        fail(ErrorKind::kInvalidArgument, "message destination " + std::to_string(m.dest) +
                                              " outside [0, " + std::to_string(size_) + ")");

  std::vector<std::vector<Delivered>> inboxes(size_);
  std::lock_guard lock(mutex_);
  for (int source = 0; source < size_; ++source) {
    for (auto& m : outboxes[source]) {
      ledger_.record(stage, source, m.dest, m.payload.size());
      inboxes[m.dest].push_back(Delivered{source, m.tag, std::move(m.payload)});
    }
  }
  // Stable so messages with equal (source, tag) keep their posting order.
  for (auto& box : inboxes)
    std::stable_sort(box.begin(), box.end(), [](const Delivered& a, const Delivered& b) {
      return a.source != b.source ? a.source < b.source : a.tag < b.tag;
    });
  return inboxes;
}

VolumeLedger CommWorld::ledger() const {
  std::lock_guard lock(mutex_);
  return ledger_;
}

std::vector<RankVolume> volume_report(const CommWorld& world, std::string_view stage) {
  return world.ledger().stage_volumes(stage);
}

std::vector<Bytes> allgather(CommWorld& world, std::string_view stage,
                             const std::vector<Bytes>& contributions) {
  const int nranks = world.size();
  if (static_cast<int>(contributions.size()) != nranks)
    fail(ErrorKind::kContractViolation, "allgather needs one contribution per rank");
  std::vector<std::vector<Message>> outboxes(nranks);
  for (int s = 0; s < nranks; ++s)
    for (int r = 0; r < nranks; ++r)
      outboxes[s].push_back(Message{r, 0, contributions[s]});
  auto inboxes = world.exchange(stage, std::move(outboxes));
  // Every rank now holds the same list; return rank 0's view.
  std::vector<Bytes> out(nranks);
  for (auto& d : inboxes[0])
    out[d.source] = std::move(d.payload);
  return out;
}

} // namespace plexdist
