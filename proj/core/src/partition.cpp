#include "plexdist/partition.hpp"

#include "plexdist/error.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace plexdist {

namespace {

void check_parts(int nparts) {
  if (nparts < 1)
    fail(ErrorKind::kInvalidArgument, "part count must be at least 1, got " + std::to_string(nparts));
}

std::vector<std::int64_t> targets(std::int64_t ncells, int nparts) {
  std::vector<std::int64_t> t(nparts, ncells / nparts);
  for (int k = 0; k < ncells % nparts; ++k)
    ++t[k];
  return t;
}

// BFS over unassigned cells from `start`; returns the last cell reached.
std::int32_t farthest(const CellGraph& g, std::int32_t start, const std::vector<int>& part,
                      std::vector<std::int32_t>& mark, std::int32_t stamp) {
  std::deque<std::int32_t> queue{start};
  mark[start] = stamp;
  std::int32_t last = start;
  while (!queue.empty()) {
    last = queue.front();
    queue.pop_front();
    for (auto n : g.adjacent(last))
      if (part[n] < 0 && mark[n] != stamp) {
        mark[n] = stamp;
        queue.push_back(n);
      }
  }
  return last;
}

} // namespace

CellGraph cell_graph_from_lists(std::vector<std::vector<std::int32_t>> lists) {
  CellGraph g;
  g.offsets.reserve(lists.size() + 1);
  for (auto& l : lists) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    g.neighbors.insert(g.neighbors.end(), l.begin(), l.end());
    g.offsets.push_back(static_cast<std::int32_t>(g.neighbors.size()));
  }
  return g;
}

CellGraph cell_graph(const Plex& plex) {
  const int dim = plex.dimension();
  const auto [cs, ce] = plex.depth_stratum(dim);
  std::vector<std::vector<std::int32_t>> lists(ce - cs);
  if (dim >= 1)
    for (PointId c = cs; c < ce; ++c)
      for (auto f : plex.cone(c))
        for (auto other : plex.support(f))
          if (other != c)
            lists[c - cs].push_back(other - cs);
  return cell_graph_from_lists(std::move(lists));
}

std::vector<int> ChunkPartitioner::partition(const CellGraph& graph, int nparts,
                                             std::span<const int>) const {
  check_parts(nparts);
  const std::int64_t nc = graph.ncells();
  std::vector<int> parts(nc);
  for (std::int64_t i = 0; i < nc; ++i)
    parts[i] = static_cast<int>(i * nparts / nc);
  return parts;
}

std::vector<int> RandomPartitioner::partition(const CellGraph& graph, int nparts,
                                              std::span<const int>) const {
  check_parts(nparts);
  std::mt19937_64 gen(seed_);
  std::vector<int> parts(graph.ncells());
  for (auto& p : parts) {
    const std::uint64_t hi = gen() >> 32;
    p = static_cast<int>((hi * static_cast<std::uint64_t>(nparts)) >> 32);
  }
  return parts;
}

std::vector<int> GreedyBfsPartitioner::partition(const CellGraph& graph, int nparts,
                                                 std::span<const int> current) const {
  check_parts(nparts);
  const std::int32_t nc = graph.ncells();
  const auto want = targets(nc, nparts);
  if (static_cast<std::int32_t>(current.size()) == nc && nc > 0) {
    bool in_range = std::all_of(current.begin(), current.end(),
                                [&](int p) { return p >= 0 && p < nparts; });
    if (in_range && part_sizes(current, nparts) == want)
      return {current.begin(), current.end()};
  }

  std::vector<int> part(nc, -1);
  std::vector<std::int32_t> mark(nc, -1);
  std::int32_t stamp = 0;
  std::int32_t next_free = 0;
  auto first_free = [&]() {
    while (next_free < nc && part[next_free] >= 0)
      ++next_free;
    return next_free;
  };

  for (int k = 0; k < nparts; ++k) {
    std::int64_t size = 0;
    while (size < want[k]) {
      // Seed (or reseed a disconnected remainder) at a pseudo-peripheral cell.
      const auto start = first_free();
      const auto a = farthest(graph, start, part, mark, stamp++);
      const auto seed = farthest(graph, a, part, mark, stamp++);
      std::deque<std::int32_t> queue{seed};
      part[seed] = k;
      ++size;
      while (!queue.empty() && size < want[k]) {
        const auto c = queue.front();
        queue.pop_front();
        for (auto n : graph.adjacent(c)) {
          if (size >= want[k])
            break;
          if (part[n] < 0) {
            part[n] = k;
            ++size;
            queue.push_back(n);
          }
        }
      }
    }
  }
  return part;
}

std::vector<int> IdentityPartitioner::partition(const CellGraph& graph, int nparts,
                                                std::span<const int> current) const {
  check_parts(nparts);
  if (current.empty())
    return std::vector<int>(graph.ncells(), 0);
  if (static_cast<std::int32_t>(current.size()) != graph.ncells())
    fail(ErrorKind::kInvalidArgument, "current assignment does not cover every cell");
  return {current.begin(), current.end()};
}

RelabeledPartitioner::RelabeledPartitioner(std::shared_ptr<const Partitioner> inner,
                                           std::vector<int> perm)
    : inner_(std::move(inner)), perm_(std::move(perm)) {
  auto sorted = perm_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int>(i))
      fail(ErrorKind::kInvalidArgument, "relabeling must be a permutation of 0..P-1");
}

std::vector<int> RelabeledPartitioner::partition(const CellGraph& graph, int nparts,
                                                 std::span<const int> current) const {
  if (static_cast<int>(perm_.size()) != nparts)
    fail(ErrorKind::kInvalidArgument, "relabeling size differs from the part count");
  auto parts = inner_->partition(graph, nparts, current);
  for (auto& p : parts)
    p = perm_[p];
  return parts;
}

std::shared_ptr<const Partitioner> make_partitioner(std::string_view method, std::uint64_t seed) {
  if (method == "chunk")
    return std::make_shared<ChunkPartitioner>();
  if (method == "random")
    return std::make_shared<RandomPartitioner>(seed);
  if (method == "greedy-bfs" || method == "greedy")
    return std::make_shared<GreedyBfsPartitioner>();
  if (method == "identity")
    return std::make_shared<IdentityPartitioner>();
  fail(ErrorKind::kInvalidArgument, "unknown partition method '" + std::string(method) + "'");
}

Label partition(const Plex& plex, int nparts, const Partitioner& partitioner) {
  check_parts(nparts);
  const auto graph = cell_graph(plex);
  const auto parts = partitioner.partition(graph, nparts, {});
  const PointId cs = plex.depth_stratum(plex.dimension()).first;
  Label label;
  for (std::int32_t c = 0; c < graph.ncells(); ++c) {
    if (parts[c] < 0 || parts[c] >= nparts)
      fail(ErrorKind::kContractViolation, partitioner.name() + " produced part " +
                                              std::to_string(parts[c]) + " outside [0, " +
                                              std::to_string(nparts) + ")");
    label.insert(parts[c], cs + c);
  }
  return label;
}

std::vector<std::int64_t> part_sizes(std::span<const int> parts, int nparts) {
  std::vector<std::int64_t> sizes(nparts, 0);
  for (auto p : parts)
    if (p >= 0 && p < nparts)
      ++sizes[p];
  return sizes;
}

std::int64_t edge_cut(const CellGraph& graph, std::span<const int> parts) {
  std::int64_t cut = 0;
  for (std::int32_t c = 0; c < graph.ncells(); ++c)
    for (auto n : graph.adjacent(c))
      if (n > c && parts[n] != parts[c])
        ++cut;
  return cut;
}

} // namespace plexdist
