#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "srw/config.hpp"

namespace srw {
namespace {

ConfigErrc error_of(const SimConfig& c) {
  try {
    validate_config(c);
  } catch (const ConfigError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a ConfigError";
  return ConfigErrc::BadValue;
}

TEST(DeriveGeometry, ClosedFormExamples) {
  const double e = std::numbers::e;
  auto g = derive_geometry(3, 3.0 / e);
  // sqrt(ln 3 * e / 3), evaluated independently.
  EXPECT_NEAR(g.comm_range, 0.9977203717823155, 1e-12);
  EXPECT_NEAR(g.area, e, 1e-12);

  g = derive_geometry(2, std::log(2.0));
  EXPECT_DOUBLE_EQ(g.comm_range, 1.0);

  g = derive_geometry(100, 1.0);
  EXPECT_DOUBLE_EQ(g.area, 100.0);
  EXPECT_DOUBLE_EQ(g.side, 10.0);
  EXPECT_NEAR(g.comm_range, 2.145966026289347, 1e-12);
}

TEST(DeriveGeometry, Invariants) {
  for (std::uint32_t n : {2u, 10u, 100u, 1000u, 100000u})
    for (double rho : {0.001, 0.015, 1.0, 7.5}) {
      const auto g = derive_geometry(n, rho);
      EXPECT_NEAR(g.area, g.side * g.side, 1e-9 * g.area);
      EXPECT_NEAR(g.comm_range * g.comm_range, std::log(double(n)) / rho,
                  1e-9 * std::log(double(n)) / rho);
      if (n >= 4) {
        EXPECT_LT(g.comm_range, g.side);
      }
    }
}

TEST(DeriveGeometry, ScaleConsistency) {
  for (std::uint32_t n : {2u, 50u, 777u}) {
    const auto a = derive_geometry(n, 0.02), b = derive_geometry(n, 0.04);
    EXPECT_NEAR(b.area, a.area / 2, 1e-12 * a.area);
    EXPECT_NEAR(b.comm_range, a.comm_range / std::sqrt(2.0), 1e-12 * a.comm_range);
  }
}

TEST(DeriveGeometry, RejectsSingleNodeAndBadDensity) {
  EXPECT_THROW(derive_geometry(1, 1.0), ConfigError);
  EXPECT_THROW(derive_geometry(0, 1.0), ConfigError);
  EXPECT_THROW(derive_geometry(10, 0.0), ConfigError);
}

TEST(ValidateConfig, DefaultIsIdentity) {
  const SimConfig c;
  EXPECT_EQ(validate_config(c), c);
}

TEST(ValidateConfig, NamedErrors) {
  SimConfig c;
  c.hop_interval = 0.15;
  c.tick = 0.1;
  EXPECT_EQ(error_of(c), ConfigErrc::HopNotMultiple);
  try {
    validate_config(c);
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("hop_interval not a multiple of tick"), std::string::npos);
  }

  c = {};
  c.speed_avg = 3;
  c.speed_halfwidth = 4;
  EXPECT_EQ(error_of(c), ConfigErrc::NegativeMinSpeed);

  c = {};
  c.n_nodes = 0;
  EXPECT_EQ(error_of(c), ConfigErrc::NodeCount);
  c = {};
  c.density = -1;
  EXPECT_EQ(error_of(c), ConfigErrc::Density);
  c = {};
  c.tick = 0;
  EXPECT_EQ(error_of(c), ConfigErrc::Tick);
  c = {};
  c.hop_interval = 0.05;
  EXPECT_EQ(error_of(c), ConfigErrc::HopBelowTick);
  c = {};
  c.milestones = {0.5, 0.9};
  EXPECT_EQ(error_of(c), ConfigErrc::Milestones);
  c = {};
  c.milestones = {0.0, 1.0};
  EXPECT_EQ(error_of(c), ConfigErrc::Milestones);
  c = {};
  c.topology = {TopologyKind::Torus, 4, 4};
  EXPECT_EQ(error_of(c), ConfigErrc::Topology);
}

TEST(ValidateConfig, HopIntervalMultiplesAccepted) {
  SimConfig c;
  c.tick = 0.1;
  for (double h : {0.1, 0.2, 0.3, 0.7, 1.0}) {
    c.hop_interval = h;
    EXPECT_NO_THROW(validate_config(c)) << h;
    EXPECT_EQ(validate_config(c).hop_ticks(), static_cast<std::uint64_t>(std::llround(h * 10)));
  }
}

TEST(ValidateConfig, NormalizesMilestones) {
  SimConfig c;
  c.milestones = {1.0, 0.5, 0.75, 0.5};
  EXPECT_EQ(validate_config(c).milestones, (std::vector<double>{0.5, 0.75, 1.0}));
}

TEST(ConfigText, ParsesKeyValueLines) {
  const auto c = parse_config(
      "# comment\n"
      "n_nodes = 300\n"
      "density=0.02   # trailing\n"
      "mobility_model = random_waypoint\n"
      "walk_strategy = pure_random\n"
      "milestones = 0.5, 1.0\n"
      "topology = torus:8x4\n"
      "seed = 18446744073709551615\n");
  EXPECT_EQ(c.n_nodes, 300u);
  EXPECT_DOUBLE_EQ(c.density, 0.02);
  EXPECT_EQ(c.mobility_model, MobilityModel::RandomWaypoint);
  EXPECT_EQ(c.walk_strategy, WalkStrategy::PureRandom);
  EXPECT_EQ(c.milestones, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(c.topology, (Topology{TopologyKind::Torus, 8, 4}));
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
}

TEST(ConfigText, UnknownKeyIsHardError) {
  try {
    parse_config("n_nodes = 10\nnodes = 4\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.code(), ConfigErrc::UnknownKey);
  }
}

TEST(ConfigText, MalformedValues) {
  EXPECT_THROW(parse_config("n_nodes = ten\n"), ConfigError);
  EXPECT_THROW(parse_config("density = 0.1x\n"), ConfigError);
  EXPECT_THROW(parse_config("mobility_model = teleport\n"), ConfigError);
  EXPECT_THROW(parse_config("just a line\n"), ConfigError);
}

TEST(ConfigText, FormatRoundTrips) {
  SimConfig c;
  c.n_nodes = 321;
  c.density = 0.0123456789;
  c.speed_avg = 11;
  c.mobility_model = MobilityModel::Static;
  c.milestones = {0.25, 0.5, 1.0};
  c.topology = {TopologyKind::Cycle};
  c.trace = true;
  EXPECT_EQ(parse_config(format_config(c)), c);
}

TEST(Clock, NoDriftAfterManyTicks) {
  Clock clock(0.1);
  double naive = 0.0;
  for (int k = 1; k <= 100000; ++k) {
    clock.advance();
    naive += 0.1;
  }
  EXPECT_EQ(clock.tick_index(), 100000u);
  EXPECT_EQ(clock.now(), 100000 * 0.1);
  EXPECT_NE(naive, clock.now());  // what accumulation would have produced

  Clock exact(0.25);
  for (int k = 0; k < 12345; ++k) exact.advance();
  EXPECT_EQ(exact.now(), 12345 * 0.25);
}

}  // namespace
}  // namespace srw
