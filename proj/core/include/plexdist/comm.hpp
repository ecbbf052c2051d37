#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace plexdist {

/// Stage keys used by the distribution pipelines.
namespace stage {
inline constexpr std::string_view kPartition = "partition";
inline constexpr std::string_view kInversion = "inversion";
inline constexpr std::string_view kMigration = "migration";
inline constexpr std::string_view kOverlap = "overlap";
inline constexpr std::string_view kRedistribution = "redistribution";
} // namespace stage

using Bytes = std::vector<std::byte>;

struct Message {
  int dest = 0;
  int tag = 0;
  Bytes payload;
};

struct Delivered {
  int source = 0;
  int tag = 0;
  Bytes payload;
};

struct RankVolume {
  std::uint64_t sent = 0;
  std::uint64_t received = 0;

  friend bool operator==(const RankVolume&, const RankVolume&) = default;
};

/// Per-stage, per-rank payload byte counters. Headers and tags are free.
class VolumeLedger {
public:
  VolumeLedger() = default;
  explicit VolumeLedger(int nranks) : nranks_(nranks) {}

  void record(std::string_view stage, int source, int dest, std::uint64_t bytes);

  /// All zeros for a stage that was never recorded.
  std::vector<RankVolume> stage_volumes(std::string_view stage) const;
  std::vector<std::string> stages() const;

  std::uint64_t total_sent(std::string_view stage) const;
  std::uint64_t total_received(std::string_view stage) const;

  int nranks() const { return nranks_; }

  friend bool operator==(const VolumeLedger&, const VolumeLedger&) = default;

private:
  int nranks_ = 0;
  std::map<std::string, std::vector<RankVolume>, std::less<>> stages_;
};

/// In-process stand-in for a P-rank communicator. Every collective is a
/// bulk-synchronous exchange: all ranks post their outboxes, then every
/// rank receives the messages addressed to it sorted by (source, tag).
/// Concurrent exchanges from different threads are serialized.
class CommWorld {
public:
  explicit CommWorld(int size);

  CommWorld(const CommWorld&) = delete;
  CommWorld& operator=(const CommWorld&) = delete;

  int size() const { return size_; }

  /// `outboxes` must hold exactly one (possibly empty) list per rank.
  std::vector<std::vector<Delivered>> exchange(std::string_view stage,
                                               std::vector<std::vector<Message>> outboxes);

  VolumeLedger ledger() const;

private:
  int size_;
  mutable std::mutex mutex_;
  VolumeLedger ledger_;
};

/// Snapshot of one stage of the ledger; does not mutate the world.
std::vector<RankVolume> volume_report(const CommWorld& world, std::string_view stage);

/// Every rank sends its contribution to every rank (itself included).
/// Returns the contributions indexed by source rank, identical on all ranks.
std::vector<Bytes> allgather(CommWorld& world, std::string_view stage,
                             const std::vector<Bytes>& contributions);

// Payload packing helpers. Items are copied bytewise; all ranks share one
// process so no endianness conversion is needed.

template <class T>
void append_pod(Bytes& out, const T& value) {
  static_assert(std::is_trivially_copyable_v<T>);
  const auto offset = out.size();
  out.resize(offset + sizeof(T));
  std::memcpy(out.data() + offset, &value, sizeof(T));
}

template <class T>
void append_pods(Bytes& out, std::span<const T> values) {
  static_assert(std::is_trivially_copyable_v<T>);
  const auto offset = out.size();
  out.resize(offset + values.size_bytes());
  if (!values.empty())
    std::memcpy(out.data() + offset, values.data(), values.size_bytes());
}

template <class T>
std::vector<T> unpack_pods(std::span<const std::byte> in) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::vector<T> out(in.size() / sizeof(T));
  if (!out.empty())
    std::memcpy(out.data(), in.data(), out.size() * sizeof(T));
  return out;
}

} // namespace plexdist
