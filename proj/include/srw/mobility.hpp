#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "srw/config.hpp"
#include "srw/rng.hpp"

namespace srw {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Vec2&) const = default;
};

inline double distance_squared(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Per-node motion state. Random direction uses heading/epoch_remaining;
// random waypoint uses waypoint/pause_remaining.
struct NodeKinematics {
  Vec2 position;
  double heading = 0.0;
  double speed = 0.0;
  double epoch_remaining = 0.0;
  std::optional<Vec2> waypoint;
  double pause_remaining = 0.0;
};

struct MotionParams {
  double speed_min = 0.0;
  double speed_max = 0.0;
  double direction_epoch = 1.0;
  double pause_time = 2.0;

  static MotionParams from(const SimConfig& c) {
    return {c.speed_min(), c.speed_max(), c.direction_epoch, c.pause_time};
  }
};

namespace detail {
// Slack for decrementing timers by a floating tick.
inline constexpr double kTimerEps = 1e-9;

inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a = 0.0;
  return a;
}

// Mirrors `v` into [0, side]; returns true if an odd number of bounces happened.
inline bool reflect(double& v, double side) {
  bool flipped = false;
  while (v < 0.0 || v > side) {
    v = v < 0.0 ? -v : 2.0 * side - v;
    flipped = !flipped;
  }
  return flipped;
}
}  // namespace detail

inline std::vector<NodeKinematics> init_deployment(const SimConfig& config,
                                                   const WorldGeometry& geometry,
                                                   RngStream& rng) {
  const auto p = MotionParams::from(config);
  std::vector<NodeKinematics> nodes(config.n_nodes);
  for (auto& n : nodes) {
    n.position = {rng.uniform(0.0, geometry.side), rng.uniform(0.0, geometry.side)};
    n.heading = rng.angle();
    n.speed = rng.uniform(p.speed_min, p.speed_max);
    if (config.mobility_model == MobilityModel::RandomDirection) {
      n.epoch_remaining = p.direction_epoch;
    } else if (config.mobility_model == MobilityModel::RandomWaypoint) {
      n.waypoint = Vec2{rng.uniform(0.0, geometry.side), rng.uniform(0.0, geometry.side)};
    }
  }
  return nodes;
}

/// Moves a random-direction node by one tick with specular reflection at the
/// region boundary, then resamples heading and speed if its epoch expired.
inline NodeKinematics step_random_direction(NodeKinematics node, double dt, double side,
                                            const MotionParams& p, RngStream& rng) {
  double vx = std::cos(node.heading), vy = std::sin(node.heading);
  double x = node.position.x + node.speed * dt * vx;
  double y = node.position.y + node.speed * dt * vy;
  const bool flip_x = detail::reflect(x, side);
  const bool flip_y = detail::reflect(y, side);
  if (flip_x || flip_y) {
    double h = node.heading;
    if (flip_x) h = std::numbers::pi - h;
    if (flip_y) h = -h;
    node.heading = detail::wrap_angle(h);
  }
  node.position = {x, y};

  node.epoch_remaining -= dt;
  if (node.epoch_remaining <= detail::kTimerEps) {
    node.heading = rng.angle();
    node.speed = rng.uniform(p.speed_min, p.speed_max);
    node.epoch_remaining = p.direction_epoch;
  }
  return node;
}

/// One tick of random waypoint motion: pause, or travel toward the waypoint,
/// snapping to it (and starting a pause) when it is reached within the tick.
inline NodeKinematics step_random_waypoint(NodeKinematics node, double dt, double side,
                                           const MotionParams& p, RngStream& rng) {
  if (node.pause_remaining > detail::kTimerEps) {
    node.pause_remaining -= dt;
    if (node.pause_remaining < detail::kTimerEps) node.pause_remaining = 0.0;
    return node;
  }
  if (!node.waypoint) {
    node.waypoint = Vec2{rng.uniform(0.0, side), rng.uniform(0.0, side)};
    node.speed = rng.uniform(p.speed_min, p.speed_max);
  }
  const Vec2 target = *node.waypoint;
  const double dx = target.x - node.position.x, dy = target.y - node.position.y;
  const double dist = std::sqrt(dx * dx + dy * dy);
  const double travel = node.speed * dt;
  if (travel >= dist) {
    node.position = target;
    node.waypoint.reset();
    node.pause_remaining = p.pause_time;
  } else {
    node.position.x += dx / dist * travel;
    node.position.y += dy / dist * travel;
  }
  return node;
}

inline void step_all(std::vector<NodeKinematics>& nodes, MobilityModel model, double dt,
                     double side, const MotionParams& p, RngStream& rng) {
  switch (model) {
    case MobilityModel::RandomDirection:
      for (auto& n : nodes) n = step_random_direction(n, dt, side, p, rng);
      break;
    case MobilityModel::RandomWaypoint:
      for (auto& n : nodes) n = step_random_waypoint(n, dt, side, p, rng);
      break;
    case MobilityModel::Static:
      break;
  }
}

}  // namespace srw
