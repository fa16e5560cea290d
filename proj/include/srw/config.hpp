#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace srw {

enum class MobilityModel { RandomDirection, RandomWaypoint, Static };
enum class WalkStrategy { SelfRepelling, PureRandom };
enum class TopologyKind { Geometric, Complete, Cycle, Path, Torus };

enum class ConfigErrc {
  NodeCount,
  Density,
  NegativeMinSpeed,
  PauseTime,
  DirectionEpoch,
  Tick,
  HopBelowTick,
  HopNotMultiple,
  MaxSimTime,
  Milestones,
  CommRange,
  Topology,
  UnknownKey,
  BadValue,
};

inline std::string_view errc_name(ConfigErrc e) {
  switch (e) {
    case ConfigErrc::NodeCount: return "invalid node count";
    case ConfigErrc::Density: return "non-positive density";
    case ConfigErrc::NegativeMinSpeed: return "negative minimum speed";
    case ConfigErrc::PauseTime: return "negative pause time";
    case ConfigErrc::DirectionEpoch: return "non-positive direction epoch";
    case ConfigErrc::Tick: return "non-positive tick";
    case ConfigErrc::HopBelowTick: return "hop_interval shorter than tick";
    case ConfigErrc::HopNotMultiple: return "hop_interval not a multiple of tick";
    case ConfigErrc::MaxSimTime: return "non-positive max_sim_time";
    case ConfigErrc::Milestones: return "invalid milestones";
    case ConfigErrc::CommRange: return "negative comm_range";
    case ConfigErrc::Topology: return "invalid topology";
    case ConfigErrc::UnknownKey: return "unknown key";
    case ConfigErrc::BadValue: return "bad value";
  }
  return "unknown error";
}

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) +
                           (detail.empty() ? "" : ": " + detail)),
        code_(code) {}
  ConfigErrc code() const noexcept { return code_; }

 private:
  ConfigErrc code_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Topology {
  TopologyKind kind = TopologyKind::Geometric;
  std::uint32_t width = 0;  // torus only
  std::uint32_t height = 0;

  bool operator==(const Topology&) const = default;
};

inline std::vector<double> default_milestones() {
  std::vector<double> m;
  for (int k = 1; k <= 20; ++k) m.push_back(k / 20.0);
  return m;
}

struct SimConfig {
  std::uint32_t n_nodes = 100;
  double density = 0.015;  // nodes per m^2
  MobilityModel mobility_model = MobilityModel::RandomDirection;
  double speed_avg = 7.0;
  double speed_halfwidth = 2.0;
  double pause_time = 2.0;
  double direction_epoch = 1.0;
  double tick = 0.1;
  double hop_interval = 0.1;
  WalkStrategy walk_strategy = WalkStrategy::SelfRepelling;
  std::uint64_t seed = 1;
  double max_sim_time = 86400.0;
  std::vector<double> milestones = default_milestones();
  // 0 derives the range from the connectivity threshold.
  double comm_range = 0.0;
  Topology topology{};
  bool trace = false;

  double speed_min() const { return speed_avg - speed_halfwidth; }
  double speed_max() const { return speed_avg + speed_halfwidth; }

  // Ticks per hop attempt; valid after validate_config.
  std::uint64_t hop_ticks() const {
    return static_cast<std::uint64_t>(std::llround(hop_interval / tick));
  }

  bool operator==(const SimConfig&) const = default;
};

inline SimConfig validate_config(SimConfig c) {
  if (c.n_nodes < 1) throw ConfigError(ConfigErrc::NodeCount, "n_nodes must be >= 1");
  if (!(c.density > 0.0)) throw ConfigError(ConfigErrc::Density, "");
  if (!(c.speed_min() >= 0.0)) throw ConfigError(ConfigErrc::NegativeMinSpeed, "");
  if (!(c.speed_halfwidth >= 0.0))
    throw ConfigError(ConfigErrc::BadValue, "speed_halfwidth must be >= 0");
  if (!(c.pause_time >= 0.0)) throw ConfigError(ConfigErrc::PauseTime, "");
  if (!(c.direction_epoch > 0.0)) throw ConfigError(ConfigErrc::DirectionEpoch, "");
  if (!(c.tick > 0.0)) throw ConfigError(ConfigErrc::Tick, "");
  if (c.hop_interval < c.tick * (1.0 - 1e-9)) throw ConfigError(ConfigErrc::HopBelowTick, "");
  const double ratio = c.hop_interval / c.tick;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
    throw ConfigError(ConfigErrc::HopNotMultiple, "");
  if (!(c.max_sim_time > 0.0)) throw ConfigError(ConfigErrc::MaxSimTime, "");
  if (!(c.comm_range >= 0.0)) throw ConfigError(ConfigErrc::CommRange, "");

  auto& m = c.milestones;
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  if (m.empty()) throw ConfigError(ConfigErrc::Milestones, "empty list");
  if (!(m.front() > 0.0)) throw ConfigError(ConfigErrc::Milestones, "values must be in (0, 1]");
  if (m.back() != 1.0) throw ConfigError(ConfigErrc::Milestones, "last milestone must be 1.0");

  const auto& t = c.topology;
  if (t.kind == TopologyKind::Torus) {
    if (t.width < 3 || t.height < 3)
      throw ConfigError(ConfigErrc::Topology, "torus sides must be >= 3");
    if (static_cast<std::uint64_t>(t.width) * t.height != c.n_nodes)
      throw ConfigError(ConfigErrc::Topology, "n_nodes must equal torus width*height");
  }
  if (t.kind == TopologyKind::Cycle && c.n_nodes < 3)
    throw ConfigError(ConfigErrc::Topology, "cycle needs n_nodes >= 3");
  return c;
}

// --- text conversions ------------------------------------------------------

inline std::string to_string(MobilityModel m) {
  switch (m) {
    case MobilityModel::RandomDirection: return "random_direction";
    case MobilityModel::RandomWaypoint: return "random_waypoint";
    case MobilityModel::Static: return "static";
  }
  return "?";
}

inline std::string to_string(WalkStrategy s) {
  return s == WalkStrategy::SelfRepelling ? "self_repelling" : "pure_random";
}

inline std::string to_string(const Topology& t) {
  switch (t.kind) {
    case TopologyKind::Geometric: return "geometric";
    case TopologyKind::Complete: return "complete";
    case TopologyKind::Cycle: return "cycle";
    case TopologyKind::Path: return "path";
    case TopologyKind::Torus:
      return "torus:" + std::to_string(t.width) + "x" + std::to_string(t.height);
  }
  return "?";
}

// Shortest representation that round-trips.
inline std::string format_double(double v) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out = 0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size() || !std::isfinite(out))
    throw ConfigError(ConfigErrc::BadValue, key + " = '" + v + "'");
  return out;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& v) {
  Int out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ConfigError(ConfigErrc::BadValue, key + " = '" + v + "'");
  return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? s.npos : p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

}  // namespace detail

inline MobilityModel parse_mobility(const std::string& v) {
  if (v == "random_direction") return MobilityModel::RandomDirection;
  if (v == "random_waypoint") return MobilityModel::RandomWaypoint;
  if (v == "static") return MobilityModel::Static;
  throw ConfigError(ConfigErrc::BadValue, "mobility_model = '" + v + "'");
}

inline WalkStrategy parse_strategy(const std::string& v) {
  if (v == "self_repelling") return WalkStrategy::SelfRepelling;
  if (v == "pure_random") return WalkStrategy::PureRandom;
  throw ConfigError(ConfigErrc::BadValue, "walk_strategy = '" + v + "'");
}

inline Topology parse_topology(const std::string& v) {
  if (v == "geometric") return {TopologyKind::Geometric};
  if (v == "complete") return {TopologyKind::Complete};
  if (v == "cycle") return {TopologyKind::Cycle};
  if (v == "path") return {TopologyKind::Path};
  if (v.rfind("torus:", 0) == 0) {
    const auto dims = v.substr(6);
    const auto x = dims.find('x');
    if (x != std::string::npos) {
      Topology t{TopologyKind::Torus};
      t.width = detail::parse_int<std::uint32_t>("topology", dims.substr(0, x));
      t.height = detail::parse_int<std::uint32_t>("topology", dims.substr(x + 1));
      return t;
    }
  }
  throw ConfigError(ConfigErrc::BadValue, "topology = '" + v + "'");
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(ConfigErrc::BadValue, key + " = '" + v + "'");
}

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "n_nodes",   "density",      "mobility_model", "speed_avg",  "speed_halfwidth",
      "pause_time", "direction_epoch", "tick",       "hop_interval", "walk_strategy",
      "seed",      "max_sim_time", "milestones",     "comm_range", "topology",
      "trace"};
  return keys;
}

// Sets one field by name. Unknown keys are an error.
inline void apply_config_value(SimConfig& c, const std::string& key, const std::string& raw) {
  using detail::parse_double;
  const std::string v = detail::trim(raw);
  if (key == "n_nodes") c.n_nodes = detail::parse_int<std::uint32_t>(key, v);
  else if (key == "density") c.density = parse_double(key, v);
  else if (key == "mobility_model") c.mobility_model = parse_mobility(v);
  else if (key == "speed_avg") c.speed_avg = parse_double(key, v);
  else if (key == "speed_halfwidth") c.speed_halfwidth = parse_double(key, v);
  else if (key == "pause_time") c.pause_time = parse_double(key, v);
  else if (key == "direction_epoch") c.direction_epoch = parse_double(key, v);
  else if (key == "tick") c.tick = parse_double(key, v);
  else if (key == "hop_interval") c.hop_interval = parse_double(key, v);
  else if (key == "walk_strategy") c.walk_strategy = parse_strategy(v);
  else if (key == "seed") c.seed = detail::parse_int<std::uint64_t>(key, v);
  else if (key == "max_sim_time") c.max_sim_time = parse_double(key, v);
  else if (key == "milestones") {
    c.milestones.clear();
    for (const auto& item : detail::split(v, ',')) c.milestones.push_back(parse_double(key, item));
  } else if (key == "comm_range") c.comm_range = parse_double(key, v);
  else if (key == "topology") c.topology = parse_topology(v);
  else if (key == "trace") c.trace = parse_bool(key, v);
  else throw ConfigError(ConfigErrc::UnknownKey, "'" + key + "'");
}

// Parses `key = value` lines; '#' starts a comment. Later keys win.
inline std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(ConfigErrc::BadValue,
                        "line " + std::to_string(lineno) + ": expected 'key = value'");
    out.emplace_back(detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
  }
  return out;
}

inline SimConfig parse_config(std::string_view text, SimConfig base = {}) {
  for (const auto& [k, v] : parse_key_values(text)) apply_config_value(base, k, v);
  return base;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SimConfig load_config_file(const std::string& path, SimConfig base = {}) {
  return parse_config(read_file(path), std::move(base));
}

inline std::string format_config(const SimConfig& c) {
  std::string ms;
  for (std::size_t i = 0; i < c.milestones.size(); ++i)
    ms += (i ? "," : "") + format_double(c.milestones[i]);
  std::ostringstream o;
  o << "n_nodes = " << c.n_nodes << "\n"
    << "density = " << format_double(c.density) << "\n"
    << "mobility_model = " << to_string(c.mobility_model) << "\n"
    << "speed_avg = " << format_double(c.speed_avg) << "\n"
    << "speed_halfwidth = " << format_double(c.speed_halfwidth) << "\n"
    << "pause_time = " << format_double(c.pause_time) << "\n"
    << "direction_epoch = " << format_double(c.direction_epoch) << "\n"
    << "tick = " << format_double(c.tick) << "\n"
    << "hop_interval = " << format_double(c.hop_interval) << "\n"
    << "walk_strategy = " << to_string(c.walk_strategy) << "\n"
    << "seed = " << c.seed << "\n"
    << "max_sim_time = " << format_double(c.max_sim_time) << "\n"
    << "milestones = " << ms << "\n"
    << "comm_range = " << format_double(c.comm_range) << "\n"
    << "topology = " << to_string(c.topology) << "\n"
    << "trace = " << (c.trace ? "true" : "false") << "\n";
  return o.str();
}

// --- geometry and clock -------------------------------------------------------

struct WorldGeometry {
  double side = 0.0;
  double area = 0.0;
  double comm_range = 0.0;
};

/// Square deployment region holding `n_nodes` at `density`, with the
/// communication range at the connectivity threshold R^2 = ln(N) / density.
inline WorldGeometry derive_geometry(std::uint32_t n_nodes, double density) {
  if (n_nodes < 2)
    throw ConfigError(ConfigErrc::NodeCount, "geometry needs n_nodes >= 2 (ln 1 = 0)");
  if (!(density > 0.0)) throw ConfigError(ConfigErrc::Density, "");
  WorldGeometry g;
  g.area = n_nodes / density;
  g.side = std::sqrt(g.area);
  g.comm_range = std::sqrt(std::log(static_cast<double>(n_nodes)) / density);
  return g;
}

// Geometry used for a run: honors an explicit comm_range and tolerates N = 1.
inline WorldGeometry geometry_for(const SimConfig& c) {
  WorldGeometry g;
  if (c.n_nodes >= 2) {
    g = derive_geometry(c.n_nodes, c.density);
  } else {
    g.area = c.n_nodes / c.density;
    g.side = std::sqrt(g.area);
  }
  if (c.comm_range > 0.0) g.comm_range = c.comm_range;
  return g;
}

class Clock {
 public:
  explicit Clock(double tick) : tick_(tick) {}
  void advance() { ++tick_index_; }
  std::uint64_t tick_index() const { return tick_index_; }
  double now() const { return static_cast<double>(tick_index_) * tick_; }
  double tick() const { return tick_; }

 private:
  double tick_;
  std::uint64_t tick_index_ = 0;
};

}  // namespace srw
