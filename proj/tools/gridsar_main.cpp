// gridsar command line: scenario generation, single episodes, hyperparameter
// sweeps, planner comparisons and trajectory rendering.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "gridsar/experiments.hpp"
#include "gridsar/render.hpp"

namespace {

using namespace gridsar;

struct ConfigFlags {
  std::optional<int> max_iterations;
  std::optional<double> max_time_ms;
  std::optional<int> max_level;
  std::optional<double> p_epsilon;
  std::optional<double> gamma;
  std::optional<double> c_uct;
  std::optional<int> max_depth;
  std::optional<double> alpha;
  std::optional<int> rollout_samples;
  std::optional<int> tau;
  std::optional<double> delta_h;
  std::optional<double> h_max;
  std::optional<double> h_init;
  std::optional<int> max_epochs;
  std::optional<double> speed;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--max-iterations", f.max_iterations, "planner iterations per epoch");
  cmd->add_option("--max-time-ms", f.max_time_ms, "planner wall-clock budget (0 = disabled)");
  cmd->add_option("--max-level", f.max_level, "action sequence depth cap");
  cmd->add_option("--p-epsilon", f.p_epsilon, "sparsity threshold (default 1/N^2)");
  cmd->add_option("--gamma", f.gamma, "discount factor");
  cmd->add_option("--c-uct", f.c_uct, "UCT exploration constant");
  cmd->add_option("--max-depth", f.max_depth, "simulation depth cap");
  cmd->add_option("--alpha", f.alpha, "token reward weight");
  cmd->add_option("--rollout-samples", f.rollout_samples, "positions sampled per rollout cell");
  cmd->add_option("--tau", f.tau, "obstacle tolerance threshold (valid positions)");
  cmd->add_option("--delta-h", f.delta_h, "height increment (m)");
  cmd->add_option("--h-max", f.h_max, "altitude ceiling (m)");
  cmd->add_option("--h-init", f.h_init, "initial altitude (m)");
  cmd->add_option("--max-epochs", f.max_epochs, "decision epoch cap");
  cmd->add_option("--speed", f.speed, "cruise speed (m/s)");
}

void apply_config_flags(Scenario& sc, const ConfigFlags& f) {
  if (f.max_iterations) sc.planner.max_iterations = *f.max_iterations;
  if (f.max_time_ms) sc.planner.max_time_ms = *f.max_time_ms;
  if (f.max_level) sc.planner.max_level = *f.max_level;
  if (f.p_epsilon) sc.planner.p_epsilon = *f.p_epsilon;
  if (f.gamma) sc.planner.gamma = *f.gamma;
  if (f.c_uct) sc.planner.c_uct = *f.c_uct;
  if (f.max_depth) sc.planner.max_depth = *f.max_depth;
  if (f.alpha) sc.planner.alpha = *f.alpha;
  if (f.rollout_samples) sc.planner.rollout.sample_count = *f.rollout_samples;
  if (f.tau) sc.height.tau = *f.tau;
  if (f.delta_h) sc.height.delta_h_m = *f.delta_h;
  if (f.h_max) sc.height.h_max_m = *f.h_max;
  if (f.h_init) sc.height.h_init_m = *f.h_init;
  if (f.max_epochs) sc.max_epochs = *f.max_epochs;
  if (f.speed) sc.speed_mps = *f.speed;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<ScenarioKind> parse_kinds(const std::string& csv) {
  std::vector<ScenarioKind> kinds;
  std::string tok;
  std::istringstream in(csv);
  while (std::getline(in, tok, ',')) kinds.push_back(scenario_kind_from_string(tok));
  return kinds;
}

int run_main(int argc, char** argv) {
  CLI::App app{"grid-world UAV search-and-rescue planning toolkit"};
  app.require_subcommand(1);

  // gen-scenario
  auto* gen = app.add_subcommand("gen-scenario", "generate a seeded scenario file");
  std::string gen_kind = "uniform";
  uint64_t gen_seed = 1;
  std::string gen_out = "scenario.scn";
  GenOverrides overrides;
  ConfigFlags gen_flags;
  gen->add_option("--kind", gen_kind, "uniform | one_peak | three_peaks | corridor");
  gen->add_option("--seed", gen_seed, "generation seed");
  gen->add_option("--out", gen_out, "output file");
  gen->add_option("--targets", overrides.target_count, "number of targets");
  gen->add_option("--grid-n", overrides.grid_n, "grid cells per side");
  gen->add_option("--side-m", overrides.side_m, "map side length (m)");
  gen->add_option("--buildings", overrides.building_count, "building count");
  gen->add_option("--zones", overrides.zone_count, "no-fly zone count");
  add_config_flags(gen, gen_flags);

  // run
  auto* run = app.add_subcommand("run", "run a single episode");
  std::string run_scenario;
  std::string run_belief;
  std::string run_planner = "shrinking";
  uint64_t run_seed = 0;
  std::string run_out = "episode";
  bool run_render = false;
  bool run_events = false;
  bool run_dump_tree = false;
  ConfigFlags run_flags;
  run->add_option("--scenario", run_scenario, "scenario file")->required();
  run->add_option("--planner", run_planner, "shrinking | vanilla | lawnmower | greedy");
  run->add_option("--seed", run_seed, "episode seed");
  run->add_option("--out", run_out, "output prefix");
  run->add_option("--belief", run_belief, "override belief kind by regenerating the scenario");
  run->add_flag("--render", run_render, "also write <out>.ppm");
  run->add_flag("--events", run_events, "also write <out>.events");
  run->add_flag("--dump-tree", run_dump_tree, "write <out>.epochK.tree per decision epoch");
  add_config_flags(run, run_flags);

  // sweep
  auto* sw = app.add_subcommand("sweep", "hyperparameter sweep with the shrinking planner");
  SweepSpec sweep_spec;
  std::string sweep_out = "sweep";
  std::string sweep_kinds, sweep_base;
  std::vector<double> sweep_dfs, sweep_alphas;
  sw->add_option("--df", sweep_dfs, "discount factors");
  sw->add_option("--alpha", sweep_alphas, "reward alphas");
  sw->add_option("--beliefs", sweep_kinds, "comma-separated belief kinds");
  sw->add_option("--seeds", sweep_spec.seeds, "seeds per cell");
  sw->add_option("--scenario-seed", sweep_spec.scenario_seed, "terrain seed");
  sw->add_option("--scenario", sweep_base, "explicit base scenario file");
  sw->add_option("--jobs", sweep_spec.jobs, "worker pool size (0 = hardware)");
  sw->add_option("--out", sweep_out, "output prefix");

  // compare
  auto* cmp = app.add_subcommand("compare", "compare planners on identical scenarios");
  CompareSpec cmp_spec;
  std::string cmp_out = "compare";
  std::string cmp_kinds, cmp_planners, cmp_base;
  cmp->add_option("--planners", cmp_planners, "comma-separated planner list");
  cmp->add_option("--beliefs", cmp_kinds, "comma-separated belief kinds");
  cmp->add_option("--seeds", cmp_spec.seeds, "seeds per cell");
  cmp->add_option("--scenario-seed", cmp_spec.scenario_seed, "terrain seed");
  cmp->add_option("--scenario", cmp_base, "explicit base scenario file");
  cmp->add_option("--jobs", cmp_spec.jobs, "worker pool size (0 = hardware)");
  cmp->add_option("--out", cmp_out, "output prefix");

  // render
  auto* rnd = app.add_subcommand("render", "render an episode record over its scenario");
  std::string rnd_scenario, rnd_record, rnd_out = "episode.ppm";
  int rnd_scale = 2;
  rnd->add_option("--scenario", rnd_scenario, "scenario file")->required();
  rnd->add_option("--record", rnd_record, "episode record file")->required();
  rnd->add_option("--out", rnd_out, "output image (PPM)");
  rnd->add_option("--scale", rnd_scale, "pixels per raster point");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    Scenario sc = gen_scenario(scenario_kind_from_string(gen_kind), gen_seed, overrides);
    apply_config_flags(sc, gen_flags);
    validate_scenario(sc);
    save_scenario(sc, gen_out);
    std::cout << "wrote " << gen_out << " (" << sc.name << ")\n";
    return 0;
  }

  if (run->parsed()) {
    Scenario sc = load_scenario(run_scenario);
    if (!run_belief.empty()) {
      // Rebuild the same terrain seed with a different belief kind.
      const uint64_t seed_guess = fnv1a64(sc.name.data(), sc.name.size());
      Scenario regen = gen_scenario(scenario_kind_from_string(run_belief), seed_guess);
      regen.geom = sc.geom;
      sc.belief = regen.belief;
      sc.planner.alpha = regen.planner.alpha;
    }
    apply_config_flags(sc, run_flags);
    validate_scenario(sc);
    EpisodeConfig ec;
    ec.planner = planner_kind_from_string(run_planner);
    ec.seed = run_seed;
    ec.max_epochs = sc.max_epochs;
    ec.record_events = run_events;
    std::vector<std::string> dumps;
    if (run_dump_tree) ec.tree_dumps = &dumps;

    const EpisodeResult res = run_episode(sc, ec);
    write_text(run_out + ".record", serialize_record(res, sc, ec));
    if (run_events) {
      std::string ev;
      for (const std::string& e : res.events) ev += e + "\n";
      write_text(run_out + ".events", ev);
    }
    if (run_render) save_image(render_trajectory(res, sc), run_out + ".ppm");
    for (size_t k = 0; k < dumps.size(); ++k)
      write_text(run_out + ".epoch" + std::to_string(k + 1) + ".tree", dumps[k]);

    std::cout << "epochs=" << res.epochs_used << " targets=" << res.targets_found << "/"
              << res.target_cells.size() << " path_m=" << res.path_length_m
              << " terminated=" << to_string(res.terminated_by)
              << " planner_ms=" << res.planner_compute_ms << "\n";
    return 0;
  }

  if (sw->parsed()) {
    if (!sweep_dfs.empty()) sweep_spec.discount_factors = sweep_dfs;
    if (!sweep_alphas.empty()) sweep_spec.alphas = sweep_alphas;
    if (!sweep_kinds.empty()) sweep_spec.belief_kinds = parse_kinds(sweep_kinds);
    std::optional<Scenario> base;
    if (!sweep_base.empty()) base = load_scenario(sweep_base);
    const ResultsTable t = sweep(sweep_spec, base ? &*base : nullptr);
    write_text(sweep_out + ".rows.csv", write_rows_csv(t));
    write_text(sweep_out + ".summary.csv", write_summary_csv(t));
    std::cout << "wrote " << sweep_out << ".rows.csv (" << t.rows.size() << " rows) and "
              << sweep_out << ".summary.csv\n";
    return 0;
  }

  if (cmp->parsed()) {
    if (!cmp_kinds.empty()) cmp_spec.belief_kinds = parse_kinds(cmp_kinds);
    if (!cmp_planners.empty()) {
      cmp_spec.planners.clear();
      std::string tok;
      std::istringstream in(cmp_planners);
      while (std::getline(in, tok, ',')) cmp_spec.planners.push_back(planner_kind_from_string(tok));
    }
    std::optional<Scenario> base;
    if (!cmp_base.empty()) base = load_scenario(cmp_base);
    const ResultsTable t = compare(cmp_spec, base ? &*base : nullptr);
    write_text(cmp_out + ".rows.csv", write_rows_csv(t));
    write_text(cmp_out + ".summary.csv", write_summary_csv(t));
    std::cout << "wrote " << cmp_out << ".rows.csv (" << t.rows.size() << " rows) and "
              << cmp_out << ".summary.csv\n";
    return 0;
  }

  if (rnd->parsed()) {
    const Scenario sc = load_scenario(rnd_scenario);
    std::ifstream in(rnd_record, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open record: " + rnd_record);
    std::ostringstream ss;
    ss << in.rdbuf();
    const ParsedRecord rec = parse_record(ss.str());
    RenderOptions opts;
    opts.scale = rnd_scale;
    save_image(render_trajectory(rec.result, sc, opts), rnd_out);
    std::cout << "wrote " << rnd_out << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
