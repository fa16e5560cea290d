#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "srw/config.hpp"
#include "srw/graph.hpp"
#include "srw/rng.hpp"

namespace srw {

/// Per-node visit counters. These live on the nodes, not on the token.
class VisitTable {
 public:
  explicit VisitTable(std::size_t n_nodes = 0) : counts_(n_nodes, 0) {}

  std::uint64_t operator[](NodeId i) const { return counts_[i]; }
  void record(NodeId i) { ++counts_[i]; }
  std::size_t size() const { return counts_.size(); }
  std::span<const std::uint64_t> counts() const { return counts_; }

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto c : counts_) s += c;
    return s;
  }

 private:
  std::vector<std::uint64_t> counts_;
};

// Running summary carried by the token. Attributes are folded in on first visit.
struct Aggregate {
  std::uint64_t count = 0;
  double sum = 0.0;
  double max = -std::numeric_limits<double>::infinity();

  void add(double v) {
    ++count;
    sum += v;
    max = std::max(max, v);
  }
};

using NodeAttribute = std::function<double(NodeId)>;

inline double node_id_attribute(NodeId i) { return static_cast<double>(i); }

// The token knows where it is and what it has accumulated, nothing about
// where it has been.
struct Token {
  NodeId current_node = 0;
  std::uint64_t hops = 0;
  std::uint64_t unique_visited = 0;
  Aggregate aggregate;
};

struct NeighborVisit {
  NodeId id;
  std::uint64_t visits;
  bool operator==(const NeighborVisit&) const = default;
};

/// The whole hop rule. Given the current neighbors with their visit counts
/// (ascending id order) and the walk's RNG, picks the next node, or nullopt
/// when there are no neighbors. Self-repelling picks uniformly among the
/// least-visited neighbors; pure random picks uniformly among all of them.
inline std::optional<NodeId> decide_next(std::span<const NeighborVisit> candidates,
                                         WalkStrategy strategy, RngStream& rng) {
  if (candidates.empty()) return std::nullopt;
  if (strategy == WalkStrategy::PureRandom) return candidates[rng.index(candidates.size())].id;

  std::uint64_t least = std::numeric_limits<std::uint64_t>::max();
  std::size_t ties = 0;
  for (const auto& c : candidates) {
    if (c.visits < least) {
      least = c.visits;
      ties = 1;
    } else if (c.visits == least) {
      ++ties;
    }
  }
  auto pick = rng.index(ties);
  for (const auto& c : candidates)
    if (c.visits == least && pick-- == 0) return c.id;
  return std::nullopt;  // unreachable
}

template <NeighborSource P>
Token introduce_token(const P& provider, std::size_t n_nodes, VisitTable& visits, RngStream& rng,
                      const NodeAttribute& attribute = node_id_attribute) {
  if (n_nodes == 0) throw std::invalid_argument("cannot introduce a token into an empty network");
  if (provider.size() != n_nodes || visits.size() != n_nodes)
    throw std::invalid_argument("provider/visit table size mismatch");
  Token t;
  t.current_node = static_cast<NodeId>(rng.index(n_nodes));
  visits.record(t.current_node);
  t.unique_visited = 1;
  t.aggregate.add(attribute(t.current_node));
  return t;
}

inline Token introduce_token(const NeighborProvider& provider, std::size_t n_nodes,
                             VisitTable& visits, RngStream& rng,
                             const NodeAttribute& attribute = node_id_attribute) {
  return std::visit(
      [&](const auto& p) { return introduce_token(p, n_nodes, visits, rng, attribute); },
      provider);
}

enum class HopOutcome { Moved, Stranded };

// One hop attempt as seen from the current node; the trace format mirrors it.
struct HopRecord {
  NodeId from = 0;
  std::vector<NeighborVisit> candidates;
  std::optional<NodeId> decision;
  HopOutcome outcome = HopOutcome::Stranded;
};

struct HopScratch {
  std::vector<NodeId> ids;
  std::vector<NeighborVisit> candidates;
};

template <NeighborSource P>
HopOutcome hop(Token& token, const P& provider, VisitTable& visits, WalkStrategy strategy,
               RngStream& rng, HopScratch& scratch,
               const NodeAttribute& attribute = node_id_attribute) {
  neighbors(provider, token.current_node, scratch.ids);
  scratch.candidates.clear();
  for (NodeId j : scratch.ids) scratch.candidates.push_back({j, visits[j]});
  const auto next = decide_next(scratch.candidates, strategy, rng);
  if (!next) return HopOutcome::Stranded;
  const bool first = visits[*next] == 0;
  visits.record(*next);
  token.current_node = *next;
  ++token.hops;
  if (first) {
    ++token.unique_visited;
    token.aggregate.add(attribute(*next));
  }
  return HopOutcome::Moved;
}

template <NeighborSource P>
HopOutcome hop(Token& token, const P& provider, VisitTable& visits, WalkStrategy strategy,
               RngStream& rng, const NodeAttribute& attribute = node_id_attribute) {
  HopScratch scratch;
  return hop(token, provider, visits, strategy, rng, scratch, attribute);
}

template <NeighborSource P>
HopOutcome hop_self_repelling(Token& token, const P& provider, VisitTable& visits, RngStream& rng) {
  return hop(token, provider, visits, WalkStrategy::SelfRepelling, rng);
}

template <NeighborSource P>
HopOutcome hop_pure_random(Token& token, const P& provider, VisitTable& visits, RngStream& rng) {
  return hop(token, provider, visits, WalkStrategy::PureRandom, rng);
}

inline HopOutcome hop(Token& token, const NeighborProvider& provider, VisitTable& visits,
                      WalkStrategy strategy, RngStream& rng) {
  return std::visit([&](const auto& p) { return hop(token, p, visits, strategy, rng); }, provider);
}

}  // namespace srw
