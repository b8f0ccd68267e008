#include "gridsar/experiments.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "gridsar/detail/text.hpp"

namespace gridsar {

using detail::fmt;

void SweepSpec::validate() const {
  if (discount_factors.empty() || alphas.empty() || belief_kinds.empty())
    throw std::invalid_argument("sweep spec lists must be non-empty");
  if (seeds < 1) throw std::invalid_argument("sweep needs seeds >= 1");
}

void CompareSpec::validate() const {
  if (planners.empty() || belief_kinds.empty())
    throw std::invalid_argument("compare spec lists must be non-empty");
  if (seeds < 1) throw std::invalid_argument("compare needs seeds >= 1");
}

double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

std::optional<double> se_of(std::span<const double> xs) {
  const size_t n = xs.size();
  if (n < 2) return std::nullopt;
  const double m = mean_of(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  const double sd = std::sqrt(acc / static_cast<double>(n - 1));
  return sd / std::sqrt(static_cast<double>(n));
}

namespace {

struct Job {
  Scenario scenario;
  PlannerKind planner;
  double df;
  double alpha;
  uint64_t seed;
};

std::string cells_to_string(std::span<const Cell> cells) {
  std::string out;
  for (size_t k = 0; k < cells.size(); ++k) {
    if (k) out += "|";
    out += std::to_string(cells[k].i) + ":" + std::to_string(cells[k].j);
  }
  return out;
}

ResultRow run_job(const Job& job) {
  Scenario sc = job.scenario;
  sc.planner.gamma = job.df;
  sc.planner.alpha = job.alpha;
  EpisodeConfig ec;
  ec.planner = job.planner;
  ec.seed = job.seed;
  ec.max_epochs = sc.max_epochs;
  EpisodeResult r;
  try {
    r = run_episode(sc, ec);
  } catch (const std::exception& e) {
    throw std::runtime_error(sc.name + " planner=" + std::string(to_string(job.planner)) +
                             " seed=" + std::to_string(job.seed) + ": " + e.what());
  }
  ResultRow row;
  row.scenario_id = sc.name;
  row.belief = sc.belief.kind == BeliefKind::Uniform ? "uniform"
               : sc.belief.peaks.size() == 1         ? "one_peak"
                                                     : "three_peaks";
  row.planner = std::string(to_string(job.planner));
  row.df = job.df;
  row.alpha = job.alpha;
  row.seed = job.seed;
  row.epochs_used = r.epochs_used;
  row.targets_found = r.targets_found;
  row.path_length_m = r.path_length_m;
  row.wall_ms_total = r.sim_time_s * 1000.0;
  row.target_cells = cells_to_string(r.target_cells);
  return row;
}

// Fan jobs out to a bounded pool; rows land in job order regardless of
// scheduling, so output files never depend on thread timing.
std::vector<ResultRow> run_all(const std::vector<Job>& jobs, int requested_jobs) {
  std::vector<ResultRow> rows(jobs.size());
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error;
  std::mutex error_mu;

  unsigned workers = requested_jobs > 0 ? static_cast<unsigned>(requested_jobs)
                                        : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<size_t>(jobs.size(), 1)));

  const auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      try {
        rows[k] = run_job(jobs[k]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!failed.exchange(true)) error = e.what();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failed) throw std::runtime_error(error);
  return rows;
}

Scenario scenario_for(ScenarioKind kind, const SweepSpec& spec, const Scenario* base) {
  return base ? *base : gen_scenario(kind, spec.scenario_seed, spec.overrides);
}

void append_config_header(ResultsTable& t, const Scenario& sc) {
  // Full resolved configuration travels with every results file.
  std::istringstream in(detail::planner_block("planner.", sc.planner, sc.geom.grid_n,
                                              sc.geom.cell_size_m()) +
                        detail::height_block("height.", sc.height));
  std::string line;
  while (std::getline(in, line)) {
    const size_t sp = line.find(' ');
    t.header.emplace_back("scenario." + sc.name + "." + line.substr(0, sp), line.substr(sp + 1));
  }
  t.header.emplace_back("scenario." + sc.name + ".max_epochs", std::to_string(sc.max_epochs));
  t.header.emplace_back("scenario." + sc.name + ".speed_mps", fmt(sc.speed_mps));
}

void mark_best(std::vector<SummaryRow>& summary) {
  std::map<std::string, size_t> best;
  for (size_t k = 0; k < summary.size(); ++k) {
    const auto it = best.find(summary[k].belief);
    if (it == best.end() || summary[k].mean_epochs < summary[it->second].mean_epochs)
      best[summary[k].belief] = k;
  }
  for (auto& [belief, idx] : best) summary[idx].best = true;
}

}  // namespace

ResultsTable sweep(const SweepSpec& spec, const Scenario* base) {
  spec.validate();
  ResultsTable t;
  t.header.emplace_back("experiment", "sweep");
  t.header.emplace_back("seeds_per_cell", std::to_string(spec.seeds));
  t.header.emplace_back("scenario_seed", std::to_string(spec.scenario_seed));

  std::vector<Job> jobs;
  for (ScenarioKind kind : spec.belief_kinds) {
    const Scenario sc = scenario_for(kind, spec, base);
    validate_scenario(sc);
    append_config_header(t, sc);
    for (double df : spec.discount_factors)
      for (double alpha : spec.alphas)
        for (int s = 1; s <= spec.seeds; ++s)
          jobs.push_back(Job{sc, PlannerKind::Shrinking, df, alpha, static_cast<uint64_t>(s)});
  }
  t.rows = run_all(jobs, spec.jobs);

  for (ScenarioKind kind : spec.belief_kinds) {
    const std::string belief(to_string(kind));
    for (double df : spec.discount_factors) {
      for (double alpha : spec.alphas) {
        std::vector<double> epochs, targets;
        for (const ResultRow& r : t.rows)
          if (r.belief == belief && r.df == df && r.alpha == alpha) {
            epochs.push_back(r.epochs_used);
            targets.push_back(r.targets_found);
          }
        if (epochs.empty()) continue;
        SummaryRow s;
        s.belief = belief;
        s.planner = "shrinking";
        s.df = df;
        s.alpha = alpha;
        s.n = static_cast<int>(epochs.size());
        s.mean_epochs = mean_of(epochs);
        s.se_epochs = se_of(epochs);
        s.mean_targets = mean_of(targets);
        t.summary.push_back(std::move(s));
      }
    }
  }
  mark_best(t.summary);
  return t;
}

ResultsTable compare(const CompareSpec& spec, const Scenario* base) {
  spec.validate();
  ResultsTable t;
  t.header.emplace_back("experiment", "compare");
  t.header.emplace_back("seeds_per_cell", std::to_string(spec.seeds));
  t.header.emplace_back("scenario_seed", std::to_string(spec.scenario_seed));

  std::vector<Job> jobs;
  for (ScenarioKind kind : spec.belief_kinds) {
    const Scenario sc = base ? *base : gen_scenario(kind, spec.scenario_seed, spec.overrides);
    validate_scenario(sc);
    append_config_header(t, sc);
    const auto hp = spec.hyperparams.find(kind);
    const double df = hp != spec.hyperparams.end() ? hp->second.first : sc.planner.gamma;
    const double alpha = hp != spec.hyperparams.end() ? hp->second.second : sc.planner.alpha;
    t.header.emplace_back("scenario." + sc.name + ".df", fmt(df));
    t.header.emplace_back("scenario." + sc.name + ".alpha", fmt(alpha));
    for (PlannerKind planner : spec.planners)
      for (int s = 1; s <= spec.seeds; ++s)
        jobs.push_back(Job{sc, planner, df, alpha, static_cast<uint64_t>(s)});
  }
  t.rows = run_all(jobs, spec.jobs);

  for (ScenarioKind kind : spec.belief_kinds) {
    const std::string belief(to_string(kind));
    for (PlannerKind planner : spec.planners) {
      const std::string pname(to_string(planner));
      std::vector<double> epochs, targets;
      double df = 0.0, alpha = 0.0;
      for (const ResultRow& r : t.rows)
        if (r.belief == belief && r.planner == pname) {
          epochs.push_back(r.epochs_used);
          targets.push_back(r.targets_found);
          df = r.df;
          alpha = r.alpha;
        }
      if (epochs.empty()) continue;
      SummaryRow s;
      s.belief = belief;
      s.planner = pname;
      s.df = df;
      s.alpha = alpha;
      s.n = static_cast<int>(epochs.size());
      s.mean_epochs = mean_of(epochs);
      s.se_epochs = se_of(epochs);
      s.mean_targets = mean_of(targets);
      t.summary.push_back(std::move(s));
    }
  }
  mark_best(t.summary);
  return t;
}

std::string write_rows_csv(const ResultsTable& t) {
  std::string out = "# gridsar results v1\n";
  for (const auto& [k, v] : t.header) out += "# " + k + " " + v + "\n";
  out += "scenario_id,belief,planner,df,alpha,seed,epochs_used,targets_found,path_length_m,"
         "wall_ms_total,target_cells\n";
  for (const ResultRow& r : t.rows) {
    out += r.scenario_id + "," + r.belief + "," + r.planner + "," + fmt(r.df) + "," +
           fmt(r.alpha) + "," + std::to_string(r.seed) + "," + std::to_string(r.epochs_used) +
           "," + std::to_string(r.targets_found) + "," + fmt(r.path_length_m) + "," +
           fmt(r.wall_ms_total) + "," + r.target_cells + "\n";
  }
  return out;
}

std::string write_summary_csv(const ResultsTable& t) {
  std::string out = "# gridsar summary v1\n";
  for (const auto& [k, v] : t.header) out += "# " + k + " " + v + "\n";
  out += "belief,planner,df,alpha,n,mean_epochs,se_epochs,mean_targets,best\n";
  for (const SummaryRow& s : t.summary) {
    out += s.belief + "," + s.planner + "," + fmt(s.df) + "," + fmt(s.alpha) + "," +
           std::to_string(s.n) + "," + fmt(s.mean_epochs) + "," +
           (s.se_epochs ? fmt(*s.se_epochs) : "na") + "," + fmt(s.mean_targets) + "," +
           (s.best ? "1" : "0") + "\n";
  }
  return out;
}

std::vector<ResultRow> parse_rows_csv(const std::string& text) {
  std::vector<ResultRow> rows;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    std::vector<std::string> f;
    std::string tok;
    std::istringstream ls(line);
    while (std::getline(ls, tok, ',')) f.push_back(tok);
    if (f.size() != 11) throw std::invalid_argument("bad results row: " + line);
    ResultRow r;
    r.scenario_id = f[0];
    r.belief = f[1];
    r.planner = f[2];
    r.df = detail::parse_double(f[3]);
    r.alpha = detail::parse_double(f[4]);
    r.seed = static_cast<uint64_t>(detail::parse_int(f[5]));
    r.epochs_used = static_cast<int>(detail::parse_int(f[6]));
    r.targets_found = static_cast<int>(detail::parse_int(f[7]));
    r.path_length_m = detail::parse_double(f[8]);
    r.wall_ms_total = detail::parse_double(f[9]);
    r.target_cells = f[10];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace gridsar
