#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "srw/config.hpp"
#include "srw/graph.hpp"
#include "srw/walk.hpp"

namespace srw {

using Histogram = std::map<std::uint64_t, std::uint64_t>;  // visit count -> nodes

inline std::size_t count_visited(std::span<const std::uint64_t> counts) {
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }));
}

inline double coverage(const VisitTable& visits, std::size_t n_nodes) {
  if (n_nodes == 0) return 0.0;
  return static_cast<double>(count_visited(visits.counts())) / static_cast<double>(n_nodes);
}

/// Token placements per unique node: (hops + 1) / unique_visited. A walk with
/// no duplicate visits scores exactly 1.
inline double exploration_overhead(std::uint64_t hops, std::uint64_t unique_visited) {
  if (unique_visited == 0) throw std::invalid_argument("exploration overhead needs unique_visited >= 1");
  return static_cast<double>(hops + 1) / static_cast<double>(unique_visited);
}

// Population variance (1/N) sum (n_i - mu)^2, accumulated in one pass (Welford).
inline double visit_variance(std::span<const std::uint64_t> counts) {
  double mean = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (auto c : counts) {
    ++k;
    const double x = static_cast<double>(c);
    const double d = x - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (x - mean);
  }
  return k ? m2 / static_cast<double>(k) : 0.0;
}

inline double visit_variance(const VisitTable& visits) { return visit_variance(visits.counts()); }

inline Histogram visit_histogram(std::span<const std::uint64_t> counts) {
  Histogram h;
  for (auto c : counts) ++h[c];
  return h;
}

inline Histogram visit_histogram(const VisitTable& visits) { return visit_histogram(visits.counts()); }

// Most populated bin with visits >= 1; smallest such bin on ties. 0 if none.
inline std::uint64_t histogram_mode_visited(const Histogram& h) {
  std::uint64_t best_bin = 0, best = 0;
  for (const auto& [bin, nodes] : h)
    if (bin > 0 && nodes > best) {
      best = nodes;
      best_bin = bin;
    }
  return best_bin;
}

/// Link events per node per second. Each edge event is one event for the
/// network; dividing by N*T gives the per-node rate (equivalently, per-node
/// endpoint totals divided by 2*N*T).
inline double churn_rate(std::uint64_t edge_events, std::size_t n_nodes, double duration) {
  if (!(duration > 0.0)) throw std::invalid_argument("churn rate needs a positive duration");
  if (n_nodes == 0) return 0.0;
  return static_cast<double>(edge_events) / (static_cast<double>(n_nodes) * duration);
}

inline double churn_rate(const LinkEventCounter& counter, std::size_t n_nodes, double duration) {
  std::uint64_t endpoint_total = 0;
  for (auto c : counter.per_node()) endpoint_total += c;
  return churn_rate(endpoint_total, n_nodes, duration) / 2.0;
}

struct MilestoneSnapshot {
  double target_coverage = 0.0;
  double achieved_coverage = 0.0;
  double sim_time = 0.0;
  std::uint64_t hops = 0;
  std::uint64_t unique_visited = 0;
  double overhead = 0.0;
  Histogram histogram;
  double visit_variance = 0.0;
};

inline MilestoneSnapshot take_snapshot(double target, const VisitTable& visits, const Token& token,
                                       double sim_time) {
  MilestoneSnapshot s;
  s.target_coverage = target;
  s.achieved_coverage = coverage(visits, visits.size());
  s.sim_time = sim_time;
  s.hops = token.hops;
  s.unique_visited = token.unique_visited;
  s.overhead = exploration_overhead(token.hops, token.unique_visited);
  s.histogram = visit_histogram(visits);
  s.visit_variance = visit_variance(visits);
  return s;
}

struct RunRecord {
  SimConfig config;
  std::uint64_t seed = 0;
  std::vector<MilestoneSnapshot> milestones;
  double wall_clock_seconds = 0.0;  // informational; never serialized
  bool timed_out = false;
  double churn_rate = 0.0;
  std::uint64_t link_events = 0;
  double churn_duration = 0.0;
  std::uint64_t waiting_ticks = 0;
  Aggregate aggregate;
  std::string error;  // non-empty if the run failed before completing

  bool completed() const { return error.empty() && !timed_out; }

  const MilestoneSnapshot* at(double target) const {
    for (const auto& m : milestones)
      if (std::abs(m.target_coverage - target) < 1e-12) return &m;
    return nullptr;
  }
};

}  // namespace srw
