#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <variant>
#include <vector>

#include "srw/config.hpp"
#include "srw/graph.hpp"
#include "srw/metrics.hpp"
#include "srw/mobility.hpp"
#include "srw/rng.hpp"
#include "srw/walk.hpp"

namespace srw {

struct WorldState {
  SimConfig config;
  WorldGeometry geometry;
  std::vector<NodeKinematics> nodes;
  VisitTable visits;
  Clock clock{0.1};
};

inline WorldState make_world(const SimConfig& raw) {
  WorldState w;
  w.config = validate_config(raw);
  w.geometry = geometry_for(w.config);
  RngStream deploy(w.config.seed, stream::kDeployment);
  w.nodes = init_deployment(w.config, w.geometry, deploy);
  w.visits = VisitTable(w.config.n_nodes);
  w.clock = Clock(w.config.tick);
  return w;
}

inline NeighborProvider make_provider(const WorldState& w) {
  const auto n = w.config.n_nodes;
  switch (w.config.topology.kind) {
    case TopologyKind::Geometric: {
      GeometricDynamic g(w.geometry.comm_range);
      g.update(positions_of(w.nodes));
      return g;
    }
    case TopologyKind::Complete: return Complete{n};
    case TopologyKind::Cycle: return Cycle{n};
    case TopologyKind::Path: return Path{n};
    case TopologyKind::Torus: return TorusLattice{w.config.topology.width, w.config.topology.height};
  }
  return Complete{n};
}

using TraceSink = std::function<void(std::uint64_t tick_index, const HopRecord&)>;

struct RunOptions {
  NodeAttribute attribute = node_id_attribute;
  TraceSink trace;  // empty: no trace
};

namespace detail {
// Ticks between link-churn samples (one simulated second).
inline std::uint64_t churn_ticks(double tick) {
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(1.0 / tick)));
}
}  // namespace detail

/// Runs one token from introduction until every node has been visited or the
/// simulated time limit is hit. Mobility advances every tick; a hop is
/// attempted every hop_interval; link churn is sampled once per second.
inline RunRecord run_walk(const SimConfig& config, const RunOptions& options = {}) {
  const auto wall_start = std::chrono::steady_clock::now();
  WorldState world = make_world(config);
  const SimConfig& cfg = world.config;
  const std::size_t n = cfg.n_nodes;

  RunRecord rec;
  rec.config = cfg;
  rec.seed = cfg.seed;

  NeighborProvider provider = make_provider(world);
  auto* geometric = std::get_if<GeometricDynamic>(&provider);
  const bool moving = geometric && cfg.mobility_model != MobilityModel::Static;
  const auto motion = MotionParams::from(cfg);

  RngStream walk_rng(cfg.seed, stream::kWalk);
  RngStream mobility_rng(cfg.seed, stream::kMobility);

  Token token = introduce_token(provider, n, world.visits, walk_rng, options.attribute);

  // Milestone k is reached once unique_visited >= ceil(target * N).
  std::vector<std::uint64_t> needed;
  for (double m : cfg.milestones)
    needed.push_back(static_cast<std::uint64_t>(std::ceil(m * static_cast<double>(n) - 1e-9)));
  std::size_t next_milestone = 0;
  auto check_milestones = [&] {
    while (next_milestone < needed.size() && token.unique_visited >= needed[next_milestone]) {
      rec.milestones.push_back(
          take_snapshot(cfg.milestones[next_milestone], world.visits, token, world.clock.now()));
      ++next_milestone;
    }
  };
  check_milestones();

  LinkEventCounter churn(n);
  if (geometric) churn.observe(geometric->positions(), geometric->comm_range());

  const std::uint64_t hop_ticks = cfg.hop_ticks();
  const std::uint64_t sample_ticks = detail::churn_ticks(cfg.tick);
  const auto max_ticks = static_cast<std::uint64_t>(std::llround(cfg.max_sim_time / cfg.tick));
  HopScratch scratch;
  bool stale = false;

  while (token.unique_visited < n) {
    if (world.clock.tick_index() >= max_ticks) {
      rec.timed_out = true;
      break;
    }
    world.clock.advance();
    const std::uint64_t t = world.clock.tick_index();
    if (moving) {
      step_all(world.nodes, cfg.mobility_model, cfg.tick, world.geometry.side, motion, mobility_rng);
      stale = true;
    }
    if (t % hop_ticks == 0) {
      if (stale) {
        geometric->update(positions_of(world.nodes));
        stale = false;
      }
      const NodeId from = token.current_node;
      const HopOutcome outcome = std::visit(
          [&](const auto& p) {
            return hop(token, p, world.visits, cfg.walk_strategy, walk_rng, scratch,
                       options.attribute);
          },
          provider);
      if (outcome == HopOutcome::Stranded) rec.waiting_ticks += hop_ticks;
      if (options.trace) {
        HopRecord hr{from, scratch.candidates, std::nullopt, outcome};
        if (outcome == HopOutcome::Moved) hr.decision = token.current_node;
        options.trace(t, hr);
      }
      check_milestones();
    }
    if (geometric && t % sample_ticks == 0) {
      if (stale) {
        geometric->update(positions_of(world.nodes));
        stale = false;
      }
      churn.observe(geometric->positions(), geometric->comm_range());
      churn.add_duration(static_cast<double>(sample_ticks) * cfg.tick);
    }
  }

  rec.link_events = churn.events();
  rec.churn_duration = churn.duration();
  rec.churn_rate = churn.duration() > 0.0 ? churn_rate(churn, n, churn.duration()) : 0.0;
  rec.aggregate = token.aggregate;
  rec.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return rec;
}

/// Mobility-only run measuring link churn (events per node per second) over
/// `duration` simulated seconds.
inline double measure_churn(const SimConfig& config, double duration) {
  WorldState world = make_world(config);
  const auto& cfg = world.config;
  const auto motion = MotionParams::from(cfg);
  RngStream mobility_rng(cfg.seed, stream::kMobility);
  LinkEventCounter churn(cfg.n_nodes);
  churn.observe(positions_of(world.nodes), world.geometry.comm_range);
  const std::uint64_t sample_ticks = detail::churn_ticks(cfg.tick);
  const auto total = static_cast<std::uint64_t>(std::llround(duration / cfg.tick));
  while (world.clock.tick_index() < total) {
    world.clock.advance();
    step_all(world.nodes, cfg.mobility_model, cfg.tick, world.geometry.side, motion, mobility_rng);
    if (world.clock.tick_index() % sample_ticks == 0) {
      churn.observe(positions_of(world.nodes), world.geometry.comm_range);
      churn.add_duration(static_cast<double>(sample_ticks) * cfg.tick);
    }
  }
  return churn.duration() > 0.0 ? churn_rate(churn, cfg.n_nodes, churn.duration()) : 0.0;
}

}  // namespace srw
