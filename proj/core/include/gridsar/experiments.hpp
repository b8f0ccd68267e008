#pragma once

#include <map>

#include "gridsar/mission.hpp"

namespace gridsar {

struct SweepSpec {
  std::vector<double> discount_factors{0.8, 0.9, 0.995};
  std::vector<double> alphas{0.0, 1.0, 10.0};
  std::vector<ScenarioKind> belief_kinds{ScenarioKind::Uniform, ScenarioKind::OnePeak,
                                         ScenarioKind::ThreePeaks};
  int seeds = 20;
  uint64_t scenario_seed = 1;
  int jobs = 0;  // 0 = hardware concurrency
  GenOverrides overrides;

  void validate() const;
};

struct CompareSpec {
  std::vector<PlannerKind> planners{PlannerKind::Shrinking, PlannerKind::Vanilla,
                                    PlannerKind::Lawnmower, PlannerKind::Greedy};
  std::vector<ScenarioKind> belief_kinds{ScenarioKind::Uniform, ScenarioKind::OnePeak,
                                         ScenarioKind::ThreePeaks};
  int seeds = 20;
  uint64_t scenario_seed = 1;
  int jobs = 0;
  GenOverrides overrides;
  /// (df, alpha) used per belief kind; defaults follow the sweep winners.
  std::map<ScenarioKind, std::pair<double, double>> hyperparams{
      {ScenarioKind::Uniform, {0.995, 0.0}},
      {ScenarioKind::OnePeak, {0.995, 10.0}},
      {ScenarioKind::ThreePeaks, {0.995, 10.0}},
  };

  void validate() const;
};

struct ResultRow {
  std::string scenario_id;
  std::string belief;
  std::string planner;
  double df = 0.0;
  double alpha = 0.0;
  uint64_t seed = 0;
  int epochs_used = 0;
  int targets_found = 0;
  double path_length_m = 0.0;
  double wall_ms_total = 0.0;  // simulated mission time, see README
  std::string target_cells;    // "i:j|i:j|..." shared-draw audit column
};

struct SummaryRow {
  std::string belief;
  std::string planner;
  double df = 0.0;
  double alpha = 0.0;
  int n = 0;
  double mean_epochs = 0.0;
  std::optional<double> se_epochs;  // absent when n < 2
  double mean_targets = 0.0;
  bool best = false;  // best mean within its belief group
};

struct ResultsTable {
  std::vector<std::pair<std::string, std::string>> header;  // resolved configuration
  std::vector<ResultRow> rows;
  std::vector<SummaryRow> summary;
};

ResultsTable sweep(const SweepSpec& spec, const Scenario* base = nullptr);
ResultsTable compare(const CompareSpec& spec, const Scenario* base = nullptr);

std::string write_rows_csv(const ResultsTable& t);
std::string write_summary_csv(const ResultsTable& t);
std::vector<ResultRow> parse_rows_csv(const std::string& text);

double mean_of(std::span<const double> xs);
/// Standard error of the mean (sample stddev / sqrt(n)); absent for n < 2.
std::optional<double> se_of(std::span<const double> xs);

}  // namespace gridsar
