#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "srw/harness.hpp"

namespace srw {
namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SRW_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh(const std::string& name) {
  auto p = fs::temp_directory_path() / ("srw_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

TEST(Cli, RunWritesCsvAndTrace) {
  const auto out = fresh("run");
  ASSERT_EQ(run_cli("run --n_nodes 60 --seed 3 --trace --out " + out.string()), 0);
  for (const char* f : {"runs.csv", "summary.csv", "histograms.csv", "trace.txt", "config.txt"})
    EXPECT_TRUE(fs::exists(out / f)) << f;
  EXPECT_EQ(replay_trace(read_file((out / "trace.txt").string())).mismatches, 0u);
  EXPECT_EQ(run_cli("replay " + (out / "trace.txt").string()), 0);
  EXPECT_EQ(parse_config(read_file((out / "config.txt").string())).n_nodes, 60u);
}

TEST(Cli, FlagOverridesConfigFile) {
  const auto dir = fresh("cfg");
  write_file(dir / "c.txt", "n_nodes = 500\ntopology = complete\nmobility_model = static\n");
  ASSERT_EQ(run_cli("run --config " + (dir / "c.txt").string() + " --n_nodes 12 --out " +
                    (dir / "o").string()),
            0);
  const auto cfg = parse_config(read_file((dir / "o" / "config.txt").string()));
  EXPECT_EQ(cfg.n_nodes, 12u);
  EXPECT_EQ(cfg.topology.kind, TopologyKind::Complete);
}

TEST(Cli, ValidationErrorsExitOne) {
  EXPECT_EQ(run_cli("run --hop_interval 0.15"), 1);
  EXPECT_EQ(run_cli("run --speed_avg 1 --speed_halfwidth 2"), 1);
  EXPECT_EQ(run_cli("run --no-such-flag 3"), 1);
  const auto dir = fresh("bad");
  write_file(dir / "c.txt", "colour = blue\n");
  EXPECT_EQ(run_cli("run --config " + (dir / "c.txt").string()), 1);
  EXPECT_EQ(run_cli("figdata fig9"), 1);
}

TEST(Cli, IoErrorsExitTwo) {
  EXPECT_EQ(run_cli("run --config /nonexistent/config.txt"), 2);
  EXPECT_EQ(run_cli("summarize /nonexistent/runs.csv"), 2);
  EXPECT_EQ(run_cli("figdata fig1 --in /nonexistent"), 2);
}

TEST(Cli, SweepSummarizeFigdata) {
  const auto dir = fresh("sweep");
  write_file(dir / "spec.txt",
             "axis.n_nodes = 30,60\naxis.walk_strategy = self_repelling,pure_random\n"
             "replicates = 2\nseed_base = 4\n");
  const auto a = dir / "a", b = dir / "b";
  ASSERT_EQ(run_cli("sweep " + (dir / "spec.txt").string() + " --out " + a.string()), 0);
  ASSERT_EQ(run_cli("sweep " + (dir / "spec.txt").string() + " --workers 3 --out " + b.string()),
            0);
  for (const char* f : {"runs.csv", "summary.csv", "histograms.csv"})
    EXPECT_EQ(read_file((a / f).string()), read_file((b / f).string())) << f;

  const auto s = dir / "s";
  ASSERT_EQ(run_cli("summarize " + (a / "runs.csv").string() + " --out " + s.string()), 0);
  EXPECT_EQ(read_file((s / "summary.csv").string()), read_file((a / "summary.csv").string()));
  EXPECT_EQ(run_cli("figdata fig2a --in " + a.string()), 0);
}

}  // namespace
}  // namespace srw
