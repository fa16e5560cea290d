#include <gtest/gtest.h>

#include "srw/harness.hpp"
#include "srw/simulation.hpp"

namespace srw {
namespace {

SimConfig static_graph(TopologyKind kind, std::uint32_t n, std::uint64_t seed = 1) {
  SimConfig c;
  c.n_nodes = n;
  c.topology = {kind};
  c.mobility_model = MobilityModel::Static;
  c.seed = seed;
  return c;
}

void expect_same(const RunRecord& a, const RunRecord& b) {
  ASSERT_EQ(a.milestones.size(), b.milestones.size());
  for (std::size_t i = 0; i < a.milestones.size(); ++i) {
    const auto &x = a.milestones[i], &y = b.milestones[i];
    EXPECT_EQ(x.hops, y.hops);
    EXPECT_EQ(x.sim_time, y.sim_time);
    EXPECT_EQ(x.histogram, y.histogram);
    EXPECT_EQ(x.visit_variance, y.visit_variance);
  }
  EXPECT_EQ(a.churn_rate, b.churn_rate);
  EXPECT_EQ(a.waiting_ticks, b.waiting_ticks);
  EXPECT_EQ(a.timed_out, b.timed_out);
}

TEST(RunWalk, CompleteGraphIsDuplicateFree) {
  const auto rec = run_walk(static_graph(TopologyKind::Complete, 100, 5));
  ASSERT_FALSE(rec.timed_out);
  const auto* full = rec.at(1.0);
  ASSERT_NE(full, nullptr);
  EXPECT_EQ(full->hops, 99u);
  EXPECT_DOUBLE_EQ(full->overhead, 1.0);
  EXPECT_DOUBLE_EQ(full->sim_time, 99 * 0.1);
  EXPECT_EQ(rec.milestones.size(), SimConfig{}.milestones.size());
}

TEST(RunWalk, SingleNodeCompletesImmediately) {
  SimConfig c;
  c.n_nodes = 1;
  const auto rec = run_walk(c);
  EXPECT_FALSE(rec.timed_out);
  ASSERT_EQ(rec.milestones.size(), c.milestones.size());
  for (const auto& m : rec.milestones) {
    EXPECT_EQ(m.hops, 0u);
    EXPECT_EQ(m.sim_time, 0.0);
    EXPECT_DOUBLE_EQ(m.overhead, 1.0);
  }
}

TEST(RunWalk, IdenticalConfigsGiveIdenticalRecords) {
  for (auto model : {MobilityModel::RandomDirection, MobilityModel::RandomWaypoint}) {
    SimConfig c;
    c.n_nodes = 120;
    c.mobility_model = model;
    c.seed = 77;
    expect_same(run_walk(c), run_walk(c));
  }
}

TEST(RunWalk, MilestoneInvariants) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SimConfig c;
    c.n_nodes = 150;
    c.seed = seed;
    c.walk_strategy = seed % 2 ? WalkStrategy::SelfRepelling : WalkStrategy::PureRandom;
    const auto rec = run_walk(c);
    ASSERT_FALSE(rec.timed_out);
    ASSERT_EQ(rec.milestones.size(), c.milestones.size());
    for (std::size_t i = 0; i < rec.milestones.size(); ++i) {
      const auto& m = rec.milestones[i];
      EXPECT_GE(m.achieved_coverage + 1e-12, m.target_coverage);
      EXPECT_GE(m.overhead, 1.0);
      std::uint64_t mass = 0, moment = 0;
      for (const auto& [bin, nodes] : m.histogram) {
        mass += nodes;
        moment += bin * nodes;
      }
      EXPECT_EQ(mass, c.n_nodes);
      EXPECT_EQ(moment, m.hops + 1);
      if (i > 0) {
        EXPECT_GT(m.target_coverage, rec.milestones[i - 1].target_coverage);
        EXPECT_GE(m.hops, rec.milestones[i - 1].hops);
        EXPECT_GE(m.unique_visited, rec.milestones[i - 1].unique_visited);
        EXPECT_GE(m.sim_time, rec.milestones[i - 1].sim_time);
      }
    }
    EXPECT_DOUBLE_EQ(rec.milestones.back().achieved_coverage, 1.0);
  }
}

TEST(RunWalk, AggregateAtFullCoverage) {
  SimConfig c;
  c.n_nodes = 200;
  c.seed = 9;
  const auto rec = run_walk(c);
  ASSERT_FALSE(rec.timed_out);
  EXPECT_EQ(rec.aggregate.count, 200u);
  EXPECT_EQ(rec.aggregate.sum, 199.0 * 200.0 / 2.0);
  EXPECT_EQ(rec.aggregate.max, 199.0);
}

TEST(RunWalk, MobileNetworksReachFullCoverage) {
  int complete = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SimConfig c;
    c.n_nodes = 100;
    c.speed_avg = 7;
    c.seed = seed;
    complete += !run_walk(c).timed_out;
  }
  EXPECT_GE(complete, 48);  // >= 95% of 50
}

TEST(RunWalk, DisconnectedNetworkTimesOutWithPartialRecord) {
  SimConfig c;
  c.n_nodes = 2;
  c.mobility_model = MobilityModel::Static;
  c.comm_range = 1e-3;
  c.max_sim_time = 5.0;
  const auto rec = run_walk(c);
  EXPECT_TRUE(rec.timed_out);
  EXPECT_FALSE(rec.completed());
  // Only the 50% milestone is reachable from the start node alone.
  ASSERT_EQ(rec.milestones.size(), 10u);
  EXPECT_EQ(rec.milestones.back().target_coverage, 0.5);
  EXPECT_EQ(rec.waiting_ticks, 50u);  // 50 stranded attempts of one tick each
  EXPECT_EQ(rec.milestones.back().hops, 0u);
}

TEST(RunWalk, HopIntervalSpacesAttempts) {
  auto c = static_graph(TopologyKind::Complete, 30);
  c.hop_interval = 0.3;
  const auto rec = run_walk(c);
  EXPECT_NEAR(rec.at(1.0)->sim_time, 29 * 0.3, 1e-9);
}

TEST(RunWalk, TraceHasOneLinePerAttempt) {
  TraceWriter trace(static_graph(TopologyKind::Complete, 3));
  RunOptions opts;
  opts.trace = trace.sink();
  run_walk(static_graph(TopologyKind::Complete, 3), opts);
  EXPECT_EQ(trace.lines(), 2u);
}

TEST(RunWalk, StaticTorusWalkMatchesDirectWalk) {
  auto c = static_graph(TopologyKind::Torus, 64);
  c.topology = {TopologyKind::Torus, 8, 8};
  c.seed = 31;
  const auto rec = run_walk(c);

  const TorusLattice g{8, 8};
  VisitTable v(64);
  RngStream rng(31, stream::kWalk);
  Token t = introduce_token(g, 64, v, rng);
  while (t.unique_visited < 64) hop_self_repelling(t, g, v, rng);
  EXPECT_EQ(rec.at(1.0)->hops, t.hops);
}

TEST(MeasureChurn, HundredNodesAtThreeMetresPerSecond) {
  SimConfig c;
  c.n_nodes = 100;
  c.speed_avg = 3;
  const double rate = measure_churn(c, 120.0);
  // Reference: 1 link change per node per second; factor-2 band.
  EXPECT_GT(rate, 0.5);
  EXPECT_LT(rate, 2.0);
}

TEST(MeasureChurn, StaticNetworkHasNoChurn) {
  SimConfig c;
  c.mobility_model = MobilityModel::Static;
  EXPECT_EQ(measure_churn(c, 10.0), 0.0);
}

}  // namespace
}  // namespace srw
