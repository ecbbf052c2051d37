#pragma once

#include "plexdist/label.hpp"
#include "plexdist/plex.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plexdist {

/// Cell dual graph in CSR form: cells are adjacent when they share a
/// codimension-1 point. Vertex i is the i-th cell.
struct CellGraph {
  std::vector<std::int32_t> offsets{0};
  std::vector<std::int32_t> neighbors;

  std::int32_t ncells() const { return static_cast<std::int32_t>(offsets.size()) - 1; }
  std::span<const std::int32_t> adjacent(std::int32_t c) const {
    return std::span<const std::int32_t>(neighbors).subspan(offsets[c], offsets[c + 1] - offsets[c]);
  }
};

CellGraph cell_graph(const Plex& plex);
/// Builds the CSR graph from per-cell neighbor lists (sorted and deduplicated).
CellGraph cell_graph_from_lists(std::vector<std::vector<std::int32_t>> lists);

/// Assigns each graph vertex a part in [0, nparts). `current` is the
/// existing assignment (empty when there is none).
class Partitioner {
public:
  virtual ~Partitioner() = default;
  virtual std::vector<int> partition(const CellGraph& graph, int nparts,
                                     std::span<const int> current) const = 0;
  virtual std::string name() const = 0;
};

/// Contiguous blocks: cell i goes to floor(i * P / Nc).
class ChunkPartitioner : public Partitioner {
public:
  std::vector<int> partition(const CellGraph& graph, int nparts,
                             std::span<const int> current) const override;
  std::string name() const override { return "chunk"; }
};

/// Independent uniform draws from a 64-bit Mersenne twister.
class RandomPartitioner : public Partitioner {
public:
  explicit RandomPartitioner(std::uint64_t seed) : seed_(seed) {}
  std::vector<int> partition(const CellGraph& graph, int nparts,
                             std::span<const int> current) const override;
  std::string name() const override { return "random"; }

private:
  std::uint64_t seed_;
};

/// Grows parts one at a time by breadth-first search from a
/// pseudo-peripheral seed, stopping each at its target size (Nc/P, the
/// first Nc%P parts one larger). An input already at those sizes is kept.
class GreedyBfsPartitioner : public Partitioner {
public:
  std::vector<int> partition(const CellGraph& graph, int nparts,
                             std::span<const int> current) const override;
  std::string name() const override { return "greedy-bfs"; }
};

/// Keeps the current assignment (part 0 when there is none).
class IdentityPartitioner : public Partitioner {
public:
  std::vector<int> partition(const CellGraph& graph, int nparts,
                             std::span<const int> current) const override;
  std::string name() const override { return "identity"; }
};

/// Renames the parts of an inner partitioner: part k becomes perm[k].
class RelabeledPartitioner : public Partitioner {
public:
  RelabeledPartitioner(std::shared_ptr<const Partitioner> inner, std::vector<int> perm);
  std::vector<int> partition(const CellGraph& graph, int nparts,
                             std::span<const int> current) const override;
  std::string name() const override { return inner_->name() + "-relabeled"; }

private:
  std::shared_ptr<const Partitioner> inner_;
  std::vector<int> perm_;
};

/// "chunk", "random", "greedy-bfs" or "identity".
std::shared_ptr<const Partitioner> make_partitioner(std::string_view method, std::uint64_t seed = 0);

/// Partition label over the cells of `plex` (values are ranks).
Label partition(const Plex& plex, int nparts, const Partitioner& partitioner);

/// Cells per part, from a cell -> part vector.
std::vector<std::int64_t> part_sizes(std::span<const int> parts, int nparts);
/// Number of dual-graph edges joining different parts.
std::int64_t edge_cut(const CellGraph& graph, std::span<const int> parts);

} // namespace plexdist
