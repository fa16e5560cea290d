#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "srw/mobility.hpp"

namespace srw {

using NodeId = std::uint32_t;

/// Uniform grid over [0, side]^2 with cells of edge `cell_size`. Queries scan
/// the 3x3 block of cells around a node, which is exact for radius <= cell_size.
class SpatialIndex {
 public:
  SpatialIndex() = default;

  SpatialIndex(std::span<const Vec2> positions, double cell_size) { rebuild(positions, cell_size); }

  void rebuild(std::span<const Vec2> positions, double cell_size) {
    double extent = 0.0;
    for (const auto& p : positions) extent = std::max({extent, p.x, p.y});
    // Coarser cells stay exact for the 3x3 scan; cap the grid at ~4 cells per node.
    const double max_cols = 2.0 * std::ceil(std::sqrt(static_cast<double>(positions.size()))) + 1.0;
    cell_size_ = std::max(cell_size > 0.0 ? cell_size : 1.0, extent / max_cols);
    cols_ = static_cast<std::uint32_t>(std::floor(extent / cell_size_)) + 1;
    // Counting sort into a CSR layout.
    start_.assign(static_cast<std::size_t>(cols_) * cols_ + 1, 0);
    cell_of_.resize(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
      cell_of_[i] = flat(cell_coord(positions[i].x), cell_coord(positions[i].y));
      ++start_[cell_of_[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    members_.resize(positions.size());
    std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < positions.size(); ++i)
      members_[fill[cell_of_[i]]++] = static_cast<NodeId>(i);
  }

  std::uint32_t cell_coord(double v) const {
    const auto c = static_cast<std::int64_t>(std::floor(v / cell_size_));
    return static_cast<std::uint32_t>(std::clamp<std::int64_t>(c, 0, cols_ - 1));
  }

  std::span<const NodeId> cell(std::uint32_t cx, std::uint32_t cy) const {
    const auto f = flat(cx, cy);
    return {members_.data() + start_[f], members_.data() + start_[f + 1]};
  }

  std::uint32_t columns() const { return cols_; }
  double cell_size() const { return cell_size_; }
  std::size_t size() const { return members_.size(); }

  /// Ids j != i within Euclidean distance `radius` (closed ball), ascending.
  void query(std::span<const Vec2> positions, NodeId i, double radius,
             std::vector<NodeId>& out) const {
    out.clear();
    const Vec2 p = positions[i];
    const double r2 = radius * radius;
    const std::uint32_t cx = cell_coord(p.x), cy = cell_coord(p.y);
    const std::uint32_t x0 = cx ? cx - 1 : 0, y0 = cy ? cy - 1 : 0;
    const std::uint32_t x1 = std::min(cx + 1, cols_ - 1), y1 = std::min(cy + 1, cols_ - 1);
    for (std::uint32_t x = x0; x <= x1; ++x)
      for (std::uint32_t y = y0; y <= y1; ++y)
        for (NodeId j : cell(x, y))
          if (j != i && distance_squared(p, positions[j]) <= r2) out.push_back(j);
    std::sort(out.begin(), out.end());
  }

 private:
  std::uint32_t flat(std::uint32_t cx, std::uint32_t cy) const { return cy * cols_ + cx; }

  double cell_size_ = 1.0;
  std::uint32_t cols_ = 1;
  std::vector<std::uint32_t> start_{0, 0};
  std::vector<std::uint32_t> cell_of_;
  std::vector<NodeId> members_;
};

inline SpatialIndex rebuild_index(std::span<const Vec2> positions, double comm_range) {
  return SpatialIndex(positions, comm_range);
}

// O(N^2) reference neighbor scan.
inline std::vector<NodeId> brute_force_neighbors(std::span<const Vec2> positions, NodeId i,
                                                 double radius) {
  std::vector<NodeId> out;
  for (NodeId j = 0; j < positions.size(); ++j)
    if (j != i && distance_squared(positions[i], positions[j]) <= radius * radius)
      out.push_back(j);
  return out;
}

// --- neighbor providers -----------------------------------------------------

/// Disk graph over the current node positions. `update` must be called
/// whenever positions change; queries are read-only afterwards.
class GeometricDynamic {
 public:
  explicit GeometricDynamic(double comm_range) : range_(comm_range) {}

  void update(std::span<const Vec2> positions) {
    positions_.assign(positions.begin(), positions.end());
    index_.rebuild(positions_, range_);
  }

  std::size_t size() const { return positions_.size(); }
  double comm_range() const { return range_; }
  std::span<const Vec2> positions() const { return positions_; }
  const SpatialIndex& index() const { return index_; }

  void neighbors(NodeId i, std::vector<NodeId>& out) const {
    index_.query(positions_, i, range_, out);
  }

 private:
  double range_;
  std::vector<Vec2> positions_;
  SpatialIndex index_;
};

struct Complete {
  std::uint32_t n = 0;
  std::size_t size() const { return n; }
  void neighbors(NodeId i, std::vector<NodeId>& out) const {
    out.clear();
    for (NodeId j = 0; j < n; ++j)
      if (j != i) out.push_back(j);
  }
};

struct Cycle {
  std::uint32_t n = 0;
  std::size_t size() const { return n; }
  void neighbors(NodeId i, std::vector<NodeId>& out) const {
    out.clear();
    if (n < 2) return;
    NodeId a = (i + n - 1) % n, b = (i + 1) % n;
    if (a > b) std::swap(a, b);
    out.push_back(a);
    if (b != a) out.push_back(b);
  }
};

struct Path {
  std::uint32_t n = 0;
  std::size_t size() const { return n; }
  void neighbors(NodeId i, std::vector<NodeId>& out) const {
    out.clear();
    if (i > 0) out.push_back(i - 1);
    if (i + 1 < n) out.push_back(i + 1);
  }
};

/// width x height lattice with wraparound, 4-neighborhood. Node id = y*width + x.
struct TorusLattice {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::size_t size() const { return static_cast<std::size_t>(width) * height; }
  void neighbors(NodeId i, std::vector<NodeId>& out) const {
    out.clear();
    const std::uint32_t x = i % width, y = i / width;
    out.push_back(y * width + (x + width - 1) % width);
    out.push_back(y * width + (x + 1) % width);
    out.push_back(((y + height - 1) % height) * width + x);
    out.push_back(((y + 1) % height) * width + x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
};

template <typename P>
concept NeighborSource = requires(const P& p, NodeId i, std::vector<NodeId>& out) {
  { p.size() } -> std::convertible_to<std::size_t>;
  p.neighbors(i, out);
};

using NeighborProvider = std::variant<GeometricDynamic, Complete, Cycle, Path, TorusLattice>;

template <NeighborSource P>
void neighbors(const P& provider, NodeId id, std::vector<NodeId>& out) {
  if (id >= provider.size())
    throw std::out_of_range("unknown node id " + std::to_string(id));
  provider.neighbors(id, out);
}

template <NeighborSource P>
std::vector<NodeId> neighbors(const P& provider, NodeId id) {
  std::vector<NodeId> out;
  neighbors(provider, id, out);
  return out;
}

inline std::size_t provider_size(const NeighborProvider& p) {
  return std::visit([](const auto& v) { return v.size(); }, p);
}

inline void neighbors(const NeighborProvider& p, NodeId id, std::vector<NodeId>& out) {
  std::visit([&](const auto& v) { neighbors(v, id, out); }, p);
}

inline std::vector<NodeId> neighbors(const NeighborProvider& p, NodeId id) {
  std::vector<NodeId> out;
  neighbors(p, id, out);
  return out;
}

// --- edge sets, link churn, connectivity -----------------------------------

// Canonical edge key: (min << 32) | max.
inline std::uint64_t edge_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

inline std::vector<std::uint64_t> disk_edges(std::span<const Vec2> positions, double range) {
  SpatialIndex index(positions, range);
  std::vector<std::uint64_t> edges;
  std::vector<NodeId> nb;
  for (NodeId i = 0; i < positions.size(); ++i) {
    index.query(positions, i, range, nb);
    for (NodeId j : nb)
      if (j > i) edges.push_back(edge_key(i, j));
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

/// Counts disk-graph edge appearances and disappearances between successive
/// snapshots.
class LinkEventCounter {
 public:
  LinkEventCounter() = default;
  explicit LinkEventCounter(std::size_t n_nodes) : per_node_(n_nodes, 0) {}

  // First call only records the baseline snapshot.
  void observe(std::span<const Vec2> positions, double range) {
    observe_edges(disk_edges(positions, range));
  }

  void observe_edges(std::vector<std::uint64_t> current) {
    if (!primed_) {
      primed_ = true;
      previous_ = std::move(current);
      return;
    }
    auto a = previous_.begin(), b = current.begin();
    while (a != previous_.end() || b != current.end()) {
      std::uint64_t e;
      if (b == current.end() || (a != previous_.end() && *a < *b)) {
        e = *a++;
      } else if (a == previous_.end() || *b < *a) {
        e = *b++;
      } else {
        ++a;
        ++b;
        continue;
      }
      ++events_;
      ++per_node_[e >> 32];
      ++per_node_[e & 0xffffffffULL];
    }
    previous_ = std::move(current);
  }

  void add_duration(double seconds) { duration_ += seconds; }

  std::uint64_t events() const { return events_; }
  const std::vector<std::uint64_t>& per_node() const { return per_node_; }
  double duration() const { return duration_; }
  std::size_t n_nodes() const { return per_node_.size(); }
  const std::vector<std::uint64_t>& snapshot() const { return previous_; }

 private:
  bool primed_ = false;
  std::vector<std::uint64_t> previous_;
  std::uint64_t events_ = 0;
  std::vector<std::uint64_t> per_node_;
  double duration_ = 0.0;
};

inline LinkEventCounter count_link_events(LinkEventCounter counter,
                                          std::span<const Vec2> positions, double range) {
  counter.observe(positions, range);
  return counter;
}

inline bool is_connected(std::span<const Vec2> positions, double range) {
  const std::size_t n = positions.size();
  if (n <= 1) return true;
  SpatialIndex index(positions, range);
  std::vector<char> seen(n, 0);
  std::queue<NodeId> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  std::vector<NodeId> nb;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    index.query(positions, u, range, nb);
    for (NodeId v : nb)
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
  }
  return reached == n;
}

inline std::vector<Vec2> positions_of(std::span<const NodeKinematics> nodes) {
  std::vector<Vec2> out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) out.push_back(n.position);
  return out;
}

}  // namespace srw
