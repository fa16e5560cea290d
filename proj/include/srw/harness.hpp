#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "srw/config.hpp"
#include "srw/metrics.hpp"
#include "srw/simulation.hpp"

namespace srw {

// --- sweep specification -----------------------------------------------------

struct SweepSpec {
  SimConfig base;
  // An empty axis means "use the base value".
  std::vector<std::uint32_t> n_nodes;
  std::vector<double> speed_avg;
  std::vector<MobilityModel> mobility_model;
  std::vector<WalkStrategy> walk_strategy;
  std::uint32_t replicates = 1;
  std::uint64_t seed_base = 1;
};

struct SweepPoint {
  std::size_t index = 0;
  std::uint32_t n_nodes = 0;
  double speed_avg = 0.0;
  MobilityModel mobility_model = MobilityModel::RandomDirection;
  WalkStrategy walk_strategy = WalkStrategy::SelfRepelling;
  // Index over (n_nodes, speed, mobility) only; strategies share it.
  std::size_t environment = 0;
};

struct SweepRun {
  SweepPoint point;
  std::uint32_t replicate = 0;
  RunRecord record;
};

namespace detail {
template <typename T>
std::vector<T> axis_or(const std::vector<T>& axis, T fallback) {
  return axis.empty() ? std::vector<T>{fallback} : axis;
}
}  // namespace detail

// Canonical order: n_nodes, then speed, then mobility model, then strategy.
inline std::vector<SweepPoint> sweep_points(const SweepSpec& spec) {
  const auto ns = detail::axis_or(spec.n_nodes, spec.base.n_nodes);
  const auto vs = detail::axis_or(spec.speed_avg, spec.base.speed_avg);
  const auto ms = detail::axis_or(spec.mobility_model, spec.base.mobility_model);
  const auto ss = detail::axis_or(spec.walk_strategy, spec.base.walk_strategy);
  std::vector<SweepPoint> points;
  std::size_t env = 0;
  for (auto n : ns)
    for (auto v : vs)
      for (auto m : ms) {
        for (auto s : ss) points.push_back({points.size(), n, v, m, s, env});
        ++env;
      }
  return points;
}

inline std::uint64_t replicate_seed(std::uint64_t seed_base, std::size_t environment,
                                    std::uint32_t replicate) {
  std::uint64_t x = (static_cast<std::uint64_t>(environment) << 32) | replicate;
  return seed_base ^ RngStream::splitmix64(x);
}

inline SimConfig point_config(const SweepSpec& spec, const SweepPoint& p, std::uint32_t replicate) {
  SimConfig c = spec.base;
  c.n_nodes = p.n_nodes;
  c.speed_avg = p.speed_avg;
  c.mobility_model = p.mobility_model;
  c.walk_strategy = p.walk_strategy;
  c.seed = replicate_seed(spec.seed_base, p.environment, replicate);
  return c;
}

/// Checks every point's config and that seeds are distinct across the
/// environment grid.
inline void validate_sweep(const SweepSpec& spec) {
  if (spec.replicates == 0) throw ConfigError(ConfigErrc::BadValue, "replicates must be >= 1");
  const auto points = sweep_points(spec);
  std::set<std::uint64_t> seeds;
  std::size_t environments = 0;
  for (const auto& p : points) {
    validate_config(point_config(spec, p, 0));
    if (p.environment + 1 > environments) {
      environments = p.environment + 1;
      for (std::uint32_t r = 0; r < spec.replicates; ++r)
        if (!seeds.insert(replicate_seed(spec.seed_base, p.environment, r)).second)
          throw ConfigError(ConfigErrc::BadValue, "seed derivation collision in sweep grid");
    }
  }
}

inline void apply_sweep_value(SweepSpec& spec, const std::string& key, const std::string& value) {
  auto items = [&] { return detail::split(value, ','); };
  if (key == "axis.n_nodes") {
    spec.n_nodes.clear();
    for (const auto& s : items()) spec.n_nodes.push_back(detail::parse_int<std::uint32_t>(key, s));
  } else if (key == "axis.speed_avg") {
    spec.speed_avg.clear();
    for (const auto& s : items()) spec.speed_avg.push_back(detail::parse_double(key, s));
  } else if (key == "axis.mobility_model") {
    spec.mobility_model.clear();
    for (const auto& s : items()) spec.mobility_model.push_back(parse_mobility(s));
  } else if (key == "axis.walk_strategy") {
    spec.walk_strategy.clear();
    for (const auto& s : items()) spec.walk_strategy.push_back(parse_strategy(s));
  } else if (key == "replicates") {
    spec.replicates = detail::parse_int<std::uint32_t>(key, value);
  } else if (key == "seed_base") {
    spec.seed_base = detail::parse_int<std::uint64_t>(key, value);
  } else {
    apply_config_value(spec.base, key, value);
  }
}

inline SweepSpec parse_sweep(std::string_view text, SweepSpec spec = {}) {
  for (const auto& [k, v] : parse_key_values(text)) apply_sweep_value(spec, k, v);
  return spec;
}

// N in {100, 300, 500, 1000}, speeds {3, 7, 11, 15}, both models, both
// strategies, 10 replicates.
inline SweepSpec default_sweep() {
  SweepSpec s;
  s.n_nodes = {100, 300, 500, 1000};
  s.speed_avg = {3, 7, 11, 15};
  s.mobility_model = {MobilityModel::RandomDirection, MobilityModel::RandomWaypoint};
  s.walk_strategy = {WalkStrategy::SelfRepelling, WalkStrategy::PureRandom};
  s.replicates = 10;
  return s;
}

inline SweepSpec desk_preset(SweepSpec s) {
  std::erase_if(s.n_nodes, [](auto n) { return n > 500; });
  s.replicates = std::min<std::uint32_t>(s.replicates, 5);
  return s;
}

inline SweepSpec full_preset(SweepSpec s) {
  if (std::find(s.n_nodes.begin(), s.n_nodes.end(), 1000u) == s.n_nodes.end())
    s.n_nodes.push_back(1000);
  std::sort(s.n_nodes.begin(), s.n_nodes.end());
  return s;
}

// --- execution ---------------------------------------------------------------

/// Executes every (point, replicate) pair on up to `workers` threads. The
/// result is in canonical order whatever the schedule; a run that throws is
/// recorded with its error message instead of aborting the sweep.
inline std::vector<SweepRun> run_sweep(const SweepSpec& spec, unsigned workers = 1) {
  validate_sweep(spec);
  const auto points = sweep_points(spec);
  std::vector<SweepRun> runs;
  for (const auto& p : points)
    for (std::uint32_t r = 0; r < spec.replicates; ++r) runs.push_back({p, r, {}});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      auto& run = runs[i];
      const SimConfig cfg = point_config(spec, run.point, run.replicate);
      try {
        run.record = run_walk(cfg);
      } catch (const std::exception& e) {
        run.record = RunRecord{};
        run.record.config = cfg;
        run.record.seed = cfg.seed;
        run.record.error = e.what();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(runs.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return runs;
}

// --- summaries ---------------------------------------------------------------

struct SummaryRow {
  SweepPoint point;
  std::optional<double> target_coverage;  // empty when no run reached any milestone
  std::size_t runs = 0;
  std::size_t completed = 0;
  std::size_t timed_out = 0;
  // Present only when completed > 0.
  std::optional<double> overhead_mean, overhead_std, hops_mean, sim_time_mean, variance_mean,
      churn_mean;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

// Sample standard deviation; zero for a single value.
inline MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return r;
}

/// One row per (point, milestone), aggregated over the point's completed runs.
/// Milestones are those reached by at least one run at the point.
inline std::vector<SummaryRow> summarize(const std::vector<SweepRun>& runs) {
  std::map<std::size_t, std::vector<const SweepRun*>> by_point;
  for (const auto& r : runs) by_point[r.point.index].push_back(&r);

  std::vector<SummaryRow> rows;
  for (const auto& [index, group] : by_point) {
    SummaryRow base;
    base.point = group.front()->point;
    base.runs = group.size();
    std::set<double> targets;
    for (const auto* r : group) {
      if (r->record.completed()) ++base.completed;
      if (r->record.timed_out) ++base.timed_out;
      for (const auto& m : r->record.milestones) targets.insert(m.target_coverage);
    }
    if (targets.empty()) {
      rows.push_back(base);
      continue;
    }
    for (double t : targets) {
      SummaryRow row = base;
      row.target_coverage = t;
      std::vector<double> overhead, hops, time, var, churn;
      for (const auto* r : group) {
        if (!r->record.completed()) continue;
        const auto* m = r->record.at(t);
        if (!m) continue;
        overhead.push_back(m->overhead);
        hops.push_back(static_cast<double>(m->hops));
        time.push_back(m->sim_time);
        var.push_back(m->visit_variance);
        churn.push_back(r->record.churn_rate);
      }
      if (!overhead.empty()) {
        const auto o = mean_std(overhead);
        row.overhead_mean = o.mean;
        row.overhead_std = o.std;
        row.hops_mean = mean_std(hops).mean;
        row.sim_time_mean = mean_std(time).mean;
        row.variance_mean = mean_std(var).mean;
        row.churn_mean = mean_std(churn).mean;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

struct LogFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit y = intercept + slope * ln(x).
inline LogFit fit_log(const std::vector<double>& x, const std::vector<double>& y) {
  LogFit f;
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return f;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    sx += lx;
    sy += y[i];
    sxx += lx * lx;
    sxy += lx * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  const double mean = sy / n;
  double ss_tot = 0, ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double pred = f.intercept + f.slope * std::log(x[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
    ss_res += (y[i] - pred) * (y[i] - pred);
  }
  f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

// --- CSV -------------------------------------------------------------------------

inline std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Shortest form that parses back to the same double; runs.csv uses it so that
// `summarize` over the file reproduces the in-process summary bit for bit.
inline std::string fmt_exact(double v) {
  char buf[40];
  for (int prec = 9; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline constexpr const char* kRunsHeader =
    "point,replicate,seed,n_nodes,mobility_model,speed_avg,walk_strategy,target_coverage,"
    "achieved_coverage,sim_time,hops,unique_visited,overhead,visit_variance,max_visits,"
    "churn_rate,waiting_ticks,timed_out";
inline constexpr const char* kHistogramsHeader =
    "point,replicate,seed,n_nodes,mobility_model,speed_avg,walk_strategy,target_coverage,"
    "visits,nodes,fraction";
inline constexpr const char* kSummaryHeader =
    "point,n_nodes,mobility_model,speed_avg,walk_strategy,target_coverage,runs,completed,"
    "timed_out,overhead_mean,overhead_std,hops_mean,sim_time_mean,visit_variance_mean,"
    "churn_rate_mean";

namespace detail {
inline std::string point_columns(const SweepPoint& p) {
  return std::to_string(p.n_nodes) + "," + to_string(p.mobility_model) + "," + fmt9(p.speed_avg) +
         "," + to_string(p.walk_strategy);
}
inline std::string opt9(const std::optional<double>& v) { return v ? fmt9(*v) : std::string(); }
}  // namespace detail

inline std::string runs_csv(const std::vector<SweepRun>& runs) {
  std::string out = std::string(kRunsHeader) + "\n";
  for (const auto& r : runs) {
    const auto& rec = r.record;
    const std::string prefix = std::to_string(r.point.index) + "," + std::to_string(r.replicate) +
                               "," + std::to_string(rec.seed) + "," +
                               detail::point_columns(r.point) + ",";
    for (const auto& m : rec.milestones) {
      const std::uint64_t max_visits = m.histogram.empty() ? 0 : m.histogram.rbegin()->first;
      out += prefix + fmt9(m.target_coverage) + "," + fmt_exact(m.achieved_coverage) + "," +
             fmt_exact(m.sim_time) + "," + std::to_string(m.hops) + "," +
             std::to_string(m.unique_visited) + "," + fmt_exact(m.overhead) + "," +
             fmt_exact(m.visit_variance) + "," + std::to_string(max_visits) + "," +
             fmt_exact(rec.churn_rate) + "," + std::to_string(rec.waiting_ticks) + "," +
             (rec.timed_out ? "1" : "0") + "\n";
    }
  }
  return out;
}

inline std::string histograms_csv(const std::vector<SweepRun>& runs) {
  std::string out = std::string(kHistogramsHeader) + "\n";
  for (const auto& r : runs) {
    const std::string prefix = std::to_string(r.point.index) + "," + std::to_string(r.replicate) +
                               "," + std::to_string(r.record.seed) + "," +
                               detail::point_columns(r.point) + ",";
    for (const auto& m : r.record.milestones) {
      std::uint64_t total = 0;
      for (const auto& [bin, nodes] : m.histogram) total += nodes;
      for (const auto& [bin, nodes] : m.histogram)
        out += prefix + fmt9(m.target_coverage) + "," + std::to_string(bin) + "," +
               std::to_string(nodes) + "," +
               fmt9(static_cast<double>(nodes) / static_cast<double>(total)) + "\n";
    }
  }
  return out;
}

inline std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = std::string(kSummaryHeader) + "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.point.index) + "," + detail::point_columns(r.point) + "," +
           detail::opt9(r.target_coverage) + "," + std::to_string(r.runs) + "," +
           std::to_string(r.completed) + "," + std::to_string(r.timed_out) + "," +
           detail::opt9(r.overhead_mean) + "," + detail::opt9(r.overhead_std) + "," +
           detail::opt9(r.hops_mean) + "," + detail::opt9(r.sim_time_mean) + "," +
           detail::opt9(r.variance_mean) + "," + detail::opt9(r.churn_mean) + "\n";
  }
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

/// Writes runs.csv, summary.csv and histograms.csv into `dir` (created if needed).
inline void emit_csv(const std::vector<SweepRun>& runs, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  write_file(dir / "runs.csv", runs_csv(runs));
  write_file(dir / "summary.csv", summary_csv(summarize(runs)));
  write_file(dir / "histograms.csv", histograms_csv(runs));
}

// Minimal reader for the comma-separated tables written above (no quoting).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw IoError("missing CSV column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  }
};

inline CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = detail::split(line, ',');
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size()) throw IoError("ragged CSV row: '" + line + "'");
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

inline CsvTable read_csv(const std::filesystem::path& path) {
  return parse_csv(read_file(path.string()));
}

/// Rebuilds run records (without histograms) from runs.csv so that they can be
/// summarized again. Runs that reached no milestone do not appear in the file.
inline std::vector<SweepRun> runs_from_csv(const CsvTable& t) {
  const auto c = [&](const char* name) { return t.column(name); };
  const auto ci = c("point"), cr = c("replicate"), cs = c("seed"), cn = c("n_nodes"),
             cm = c("mobility_model"), cv = c("speed_avg"), cw = c("walk_strategy"),
             ct = c("target_coverage"), ca = c("achieved_coverage"), cst = c("sim_time"),
             ch = c("hops"), cu = c("unique_visited"), co = c("overhead"),
             cvar = c("visit_variance"), cch = c("churn_rate"), cwt = c("waiting_ticks"),
             cto = c("timed_out");
  std::map<std::pair<std::size_t, std::uint32_t>, SweepRun> runs;
  for (const auto& row : t.rows) {
    const auto index = detail::parse_int<std::size_t>("point", row[ci]);
    const auto rep = detail::parse_int<std::uint32_t>("replicate", row[cr]);
    auto& run = runs[{index, rep}];
    run.point.index = index;
    run.replicate = rep;
    run.point.n_nodes = detail::parse_int<std::uint32_t>("n_nodes", row[cn]);
    run.point.mobility_model = parse_mobility(row[cm]);
    run.point.speed_avg = detail::parse_double("speed_avg", row[cv]);
    run.point.walk_strategy = parse_strategy(row[cw]);
    auto& rec = run.record;
    rec.seed = detail::parse_int<std::uint64_t>("seed", row[cs]);
    rec.churn_rate = detail::parse_double("churn_rate", row[cch]);
    rec.waiting_ticks = detail::parse_int<std::uint64_t>("waiting_ticks", row[cwt]);
    rec.timed_out = row[cto] == "1";
    MilestoneSnapshot m;
    m.target_coverage = detail::parse_double("target_coverage", row[ct]);
    m.achieved_coverage = detail::parse_double("achieved_coverage", row[ca]);
    m.sim_time = detail::parse_double("sim_time", row[cst]);
    m.hops = detail::parse_int<std::uint64_t>("hops", row[ch]);
    m.unique_visited = detail::parse_int<std::uint64_t>("unique_visited", row[cu]);
    m.overhead = detail::parse_double("overhead", row[co]);
    m.visit_variance = detail::parse_double("visit_variance", row[cvar]);
    rec.milestones.push_back(std::move(m));
  }
  std::vector<SweepRun> out;
  for (auto& [key, run] : runs) out.push_back(std::move(run));
  return out;
}

// --- hop traces --------------------------------------------------------------------

// Text format, one hop attempt per line after a '#' header:
//   # seed=<u64> strategy=<name> n_nodes=<n> start=<id>
//   <tick_index> <from> <id:visits,...|-> <decision|-> <moved|stranded>
class TraceWriter {
 public:
  TraceWriter(const SimConfig& cfg) : seed_(cfg.seed), strategy_(cfg.walk_strategy), n_(cfg.n_nodes) {}

  TraceSink sink() {
    return [this](std::uint64_t tick, const HopRecord& h) { add(tick, h); };
  }

  void add(std::uint64_t tick, const HopRecord& h) {
    if (!start_) start_ = h.from;
    body_ += std::to_string(tick) + " " + std::to_string(h.from) + " ";
    if (h.candidates.empty()) body_ += "-";
    for (std::size_t i = 0; i < h.candidates.size(); ++i)
      body_ += (i ? "," : "") + std::to_string(h.candidates[i].id) + ":" +
               std::to_string(h.candidates[i].visits);
    body_ += " " + (h.decision ? std::to_string(*h.decision) : std::string("-"));
    body_ += h.outcome == HopOutcome::Moved ? " moved\n" : " stranded\n";
    ++lines_;
  }

  // The start node is not observable from the sink alone for 0-hop runs.
  void set_start(NodeId start) { start_ = start; }

  std::string text() const {
    return "# seed=" + std::to_string(seed_) + " strategy=" + to_string(strategy_) +
           " n_nodes=" + std::to_string(n_) +
           " start=" + (start_ ? std::to_string(*start_) : std::string("-")) + "\n" + body_;
  }

  std::size_t lines() const { return lines_; }

 private:
  std::uint64_t seed_;
  WalkStrategy strategy_;
  std::uint32_t n_;
  std::optional<NodeId> start_;
  std::string body_;
  std::size_t lines_ = 0;
};

inline void emit_trace(const TraceWriter& trace, const std::filesystem::path& path) {
  write_file(path, trace.text());
}

struct ReplayResult {
  std::size_t lines = 0;
  std::size_t mismatches = 0;
  std::optional<std::size_t> first_mismatch;  // 1-based body line
};

/// Re-derives every decision in a trace with `decide_next` and the same walk
/// stream, using only the neighbor ids and visit counts recorded on each line.
inline ReplayResult replay_trace(const std::string& text) {
  ReplayResult res;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw IoError("trace: missing header");
  std::map<std::string, std::string> header;
  for (const auto& tok : detail::split(line.substr(2), ' ')) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) header[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  const auto seed = detail::parse_int<std::uint64_t>("seed", header["seed"]);
  const auto strategy = parse_strategy(header["strategy"]);
  const auto n = detail::parse_int<std::uint32_t>("n_nodes", header["n_nodes"]);
  RngStream rng(seed, stream::kWalk);
  const auto start = rng.index(n);
  auto mismatch = [&] {
    ++res.mismatches;
    if (!res.first_mismatch) res.first_mismatch = res.lines;
  };
  if (header["start"] != "-" && header["start"] != std::to_string(start)) mismatch();

  std::vector<NeighborVisit> cands;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++res.lines;
    std::istringstream ls(line);
    std::string tick, from, nbrs, decision, outcome;
    ls >> tick >> from >> nbrs >> decision >> outcome;
    cands.clear();
    if (nbrs != "-")
      for (const auto& item : detail::split(nbrs, ',')) {
        const auto colon = item.find(':');
        cands.push_back({detail::parse_int<NodeId>("id", item.substr(0, colon)),
                         detail::parse_int<std::uint64_t>("visits", item.substr(colon + 1))});
      }
    const auto got = decide_next(cands, strategy, rng);
    const std::string got_s = got ? std::to_string(*got) : "-";
    if (got_s != decision || (got ? "moved" : "stranded") != outcome) mismatch();
  }
  return res;
}

// --- figure data ---------------------------------------------------------------------

inline const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig1",  "fig2a", "fig2b", "fig3a",
                                               "fig3b", "fig4",  "fig5"};
  return ids;
}

namespace detail {

inline std::string columns_line(std::initializer_list<const char*> names) {
  std::string s = "#";
  for (const char* n : names) s += std::string(" ") + n;
  return s + "\n";
}

// Mean nodes per visit-count bin across runs, keyed by point columns + target.
inline std::string histogram_means(const CsvTable& h, const std::set<double>& targets,
                                   std::optional<std::string> strategy) {
  const auto cp = h.column("point"), cr = h.column("replicate"), cn = h.column("n_nodes"),
             cm = h.column("mobility_model"), cv = h.column("speed_avg"),
             cw = h.column("walk_strategy"), ct = h.column("target_coverage"),
             cb = h.column("visits"), cnodes = h.column("nodes");
  using Key = std::tuple<std::size_t, double>;  // point, target
  std::map<Key, std::set<std::string>> replicates;
  std::map<Key, std::map<std::uint64_t, double>> sums;
  std::map<std::size_t, std::vector<std::string>> labels;
  for (const auto& row : h.rows) {
    const double t = parse_double("target_coverage", row[ct]);
    if (!targets.empty() && !targets.count(t)) continue;
    if (strategy && row[cw] != *strategy) continue;
    const auto p = parse_int<std::size_t>("point", row[cp]);
    labels[p] = {row[cn], row[cm], row[cv], row[cw]};
    replicates[{p, t}].insert(row[cr]);
    sums[{p, t}][parse_int<std::uint64_t>("visits", row[cb])] +=
        parse_double("nodes", row[cnodes]);
  }
  std::string out =
      columns_line({"n_nodes", "mobility_model", "speed_avg", "walk_strategy", "target_coverage",
                    "visits", "mean_nodes", "mean_fraction"});
  for (const auto& [key, bins] : sums) {
    const auto& [p, t] = key;
    const auto& l = labels[p];
    const double runs = static_cast<double>(replicates[key].size());
    const double n = parse_double("n_nodes", l[0]);
    for (const auto& [bin, total] : bins)
      out += l[0] + " " + l[1] + " " + l[2] + " " + l[3] + " " + fmt9(t) + " " +
             std::to_string(bin) + " " + fmt9(total / runs) + " " + fmt9(total / runs / n) + "\n";
  }
  return out;
}

inline std::string summary_select(const CsvTable& s, std::optional<double> target,
                                  std::optional<std::string> strategy) {
  const auto cn = s.column("n_nodes"), cm = s.column("mobility_model"), cv = s.column("speed_avg"),
             cw = s.column("walk_strategy"), ct = s.column("target_coverage"),
             cmean = s.column("overhead_mean"), cstd = s.column("overhead_std"),
             chops = s.column("hops_mean"), ccomp = s.column("completed");
  std::string out = columns_line({"n_nodes", "mobility_model", "speed_avg", "walk_strategy",
                                  "target_coverage", "overhead_mean", "overhead_std", "hops_mean",
                                  "completed"});
  for (const auto& row : s.rows) {
    if (row[ct].empty() || row[cmean].empty()) continue;
    if (target && std::abs(parse_double("target_coverage", row[ct]) - *target) > 1e-9) continue;
    if (strategy && row[cw] != *strategy) continue;
    out += row[cn] + " " + row[cm] + " " + row[cv] + " " + row[cw] + " " + row[ct] + " " +
           row[cmean] + " " + row[cstd] + " " + row[chops] + " " + row[ccomp] + "\n";
  }
  return out;
}

}  // namespace detail

/// Whitespace-separated columns for one figure, read from a sweep output
/// directory. Blocks are separated by two blank lines (gnuplot `index`).
inline std::string figure_data(const std::string& fig, const std::filesystem::path& dir) {
  const std::string sr = to_string(WalkStrategy::SelfRepelling);
  auto summary = [&] { return read_csv(dir / "summary.csv"); };
  auto hist = [&] { return read_csv(dir / "histograms.csv"); };
  const std::string head = "# " + fig + "\n";
  if (fig == "fig1")
    return head + detail::histogram_means(hist(), {0.5, 0.75, 0.85, 1.0}, sr);
  if (fig == "fig2a") return head + detail::summary_select(summary(), std::nullopt, sr);
  if (fig == "fig2b") {
    const auto s = summary();
    return head + detail::summary_select(s, 0.8, sr) + "\n\n" + detail::summary_select(s, 1.0, sr);
  }
  if (fig == "fig3a" || fig == "fig3b") return head + detail::summary_select(summary(), 1.0, sr);
  if (fig == "fig4") return head + detail::histogram_means(hist(), {1.0}, std::nullopt);
  if (fig == "fig5") {
    const auto s = summary();
    return head + detail::summary_select(s, 1.0, std::nullopt) + "\n\n" +
           detail::summary_select(s, std::nullopt, std::nullopt);
  }
  throw ConfigError(ConfigErrc::BadValue, "unknown figure id '" + fig + "'");
}

}  // namespace srw
