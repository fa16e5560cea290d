// srw: command-line driver for self-repelling walk simulations.
//
//   srw run      [--config FILE] [--<key> VALUE ...] [--out DIR] [--trace]
//   srw sweep    [SPEC] [--desk|--full] [--workers K] [--out DIR] [--<key> VALUE ...]
//   srw summarize RUNS_CSV [--out DIR]
//   srw figdata  FIG [--in DIR]
//   srw replay   TRACE
//
// Exit status: 0 success, 1 validation error, 2 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "srw/srw.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

// One string option per config key; applied after the config file so that
// flags win.
struct KeyFlags {
  std::map<std::string, std::string> values;

  void attach(CLI::App* app, bool skip_seed) {
    for (const auto& key : srw::config_keys()) {
      if (key == "trace" || (skip_seed && key == "seed")) continue;
      app->add_option("--" + key, values[key], "config key '" + key + "'");
    }
  }

  void apply(srw::SimConfig& c) const {
    for (const auto& [k, v] : values)
      if (!v.empty()) srw::apply_config_value(c, k, v);
  }
};

void print_record(const srw::RunRecord& rec) {
  std::printf("seed %llu  n_nodes %u  %s  %s\n", static_cast<unsigned long long>(rec.seed),
              rec.config.n_nodes, srw::to_string(rec.config.mobility_model).c_str(),
              srw::to_string(rec.config.walk_strategy).c_str());
  std::printf("%10s %10s %10s %10s %10s\n", "target", "time_s", "hops", "overhead", "variance");
  for (const auto& m : rec.milestones)
    std::printf("%10.3f %10.1f %10llu %10.4f %10.4f\n", m.target_coverage, m.sim_time,
                static_cast<unsigned long long>(m.hops), m.overhead, m.visit_variance);
  std::printf("churn %.3f events/node/s, waiting ticks %llu%s\n", rec.churn_rate,
              static_cast<unsigned long long>(rec.waiting_ticks),
              rec.timed_out ? ", TIMED OUT" : "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-repelling random walks on mobile ad-hoc networks"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a single configuration");
  std::string run_config, run_out;
  bool run_trace = false;
  KeyFlags run_keys;
  run->add_option("--config", run_config, "key = value config file");
  run->add_option("--out", run_out, "output directory for CSV files");
  run->add_flag("--trace", run_trace, "write a per-hop trace (trace.txt)");
  run_keys.attach(run, false);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  std::string sweep_file, sweep_out = "out";
  bool desk = false, full = false;
  unsigned workers = 1;
  std::string sweep_seed, sweep_replicates;
  KeyFlags sweep_keys;
  sweep->add_option("spec", sweep_file, "sweep spec file (default grid if omitted)");
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_option("--workers", workers, "parallel runs");
  sweep->add_option("--seed", sweep_seed, "seed_base");
  sweep->add_option("--replicates", sweep_replicates, "replicates per point");
  auto* desk_flag = sweep->add_flag("--desk", desk, "cap N at 500 and replicates at 5");
  sweep->add_flag("--full", full, "include N = 1000 and report the log-N fit")->excludes(desk_flag);
  sweep_keys.attach(sweep, true);

  // summarize
  auto* summ = app.add_subcommand("summarize", "Recompute summary.csv from runs.csv");
  std::string summ_in, summ_out;
  summ->add_option("runs_csv", summ_in, "runs.csv")->required();
  summ->add_option("--out", summ_out, "output directory (default: alongside input)");

  // figdata
  auto* fig = app.add_subcommand("figdata", "Extract plot columns for one figure");
  std::string fig_id, fig_in = "out";
  fig->add_option("fig", fig_id, "fig1|fig2a|fig2b|fig3a|fig3b|fig4|fig5")
      ->required()
      ->check(CLI::IsMember(srw::figure_ids()));
  fig->add_option("--in", fig_in, "sweep output directory");

  // replay
  auto* replay = app.add_subcommand("replay", "Re-derive every decision in a hop trace");
  std::string replay_in;
  replay->add_option("trace", replay_in)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) {
      srw::SimConfig cfg = run_config.empty() ? srw::SimConfig{} : srw::load_config_file(run_config);
      run_keys.apply(cfg);
      if (run_trace) cfg.trace = true;
      cfg = srw::validate_config(cfg);

      srw::TraceWriter trace(cfg);
      srw::RunOptions opts;
      if (cfg.trace) opts.trace = trace.sink();
      srw::SweepRun sr;
      sr.point = {0, cfg.n_nodes, cfg.speed_avg, cfg.mobility_model, cfg.walk_strategy, 0};
      sr.record = srw::run_walk(cfg, opts);
      print_record(sr.record);
      if (!run_out.empty()) {
        srw::emit_csv({sr}, run_out);
        srw::write_file(fs::path(run_out) / "config.txt", srw::format_config(cfg));
        if (cfg.trace) srw::emit_trace(trace, fs::path(run_out) / "trace.txt");
      } else if (cfg.trace) {
        std::cout << trace.text();
      }
      return 0;
    }

    if (*sweep) {
      srw::SweepSpec spec = srw::default_sweep();
      if (!sweep_file.empty()) {
        // A spec file replaces the default grid entirely.
        spec = srw::parse_sweep(srw::read_file(sweep_file), srw::SweepSpec{});
      }
      sweep_keys.apply(spec.base);
      if (!sweep_seed.empty()) srw::apply_sweep_value(spec, "seed_base", sweep_seed);
      if (!sweep_replicates.empty()) srw::apply_sweep_value(spec, "replicates", sweep_replicates);
      if (desk) spec = srw::desk_preset(spec);
      if (full) spec = srw::full_preset(spec);

      const auto runs = srw::run_sweep(spec, workers);
      srw::emit_csv(runs, sweep_out);
      std::size_t failed = 0, timed_out = 0;
      for (const auto& r : runs) {
        failed += !r.record.error.empty();
        timed_out += r.record.timed_out;
      }
      std::printf("%zu runs (%zu timed out, %zu failed) -> %s\n", runs.size(), timed_out, failed,
                  sweep_out.c_str());

      if (full) {
        std::map<std::uint32_t, std::vector<double>> by_n;
        for (const auto& row : srw::summarize(runs))
          if (row.point.walk_strategy == srw::WalkStrategy::SelfRepelling && row.target_coverage &&
              *row.target_coverage == 1.0 && row.overhead_mean)
            by_n[row.point.n_nodes].push_back(*row.overhead_mean);
        std::vector<double> xs, ys;
        for (const auto& [n, v] : by_n) {
          xs.push_back(n);
          ys.push_back(srw::mean_std(v).mean);
        }
        const auto f = srw::fit_log(xs, ys);
        std::printf("log fit: overhead@100%% = %.4f + %.4f ln N, R^2 = %.4f (%s, threshold 0.8)\n",
                    f.intercept, f.slope, f.r_squared, f.r_squared > 0.8 ? "pass" : "FAIL");
      }
      return 0;
    }

    if (*summ) {
      const auto runs = srw::runs_from_csv(srw::read_csv(summ_in));
      const fs::path out = summ_out.empty() ? fs::path(summ_in).parent_path() : fs::path(summ_out);
      if (!out.empty()) fs::create_directories(out);
      srw::write_file(out / "summary.csv", srw::summary_csv(srw::summarize(runs)));
      return 0;
    }

    if (*fig) {
      std::cout << srw::figure_data(fig_id, fig_in);
      return 0;
    }

    if (*replay) {
      const auto res = srw::replay_trace(srw::read_file(replay_in));
      std::printf("%zu hop attempts replayed, %zu mismatches\n", res.lines, res.mismatches);
      return res.mismatches == 0 ? 0 : kExitValidation;
    }
  } catch (const srw::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const srw::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  }
  return 0;
}
