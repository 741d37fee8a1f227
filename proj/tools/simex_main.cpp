// Experiment harness CLI. Loads a maze and an initial suboptimal path, runs
// the configured exploration strategies to convergence and prints one result
// row per strategy. Exit code 0 when every strategy converged, 2 when some
// did not, 1 on usage or file errors.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simex/simex.h"

namespace {

int fail(const char* what) {
  std::fprintf(stderr, "simex: %s: %s\n", what, simex_last_error());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Compares real exploration cost of optimistic initial values against "
      "simulated exploration (trajectory sampling, sweeping of unexplored states) "
      "on a deterministic grid world"};

  std::string maze_file;
  std::string path_file;
  std::string format = "tsv";
  std::vector<std::string> strategies;
  double gamma = 0.95;
  double min_priority = 1e-6;
  std::uint64_t seed = 42;
  int depth = 6;
  int trajectories = 10;
  int sweeps_per_step = 500;
  int convergence_repeats = 2;
  std::int64_t episodes_max = 1000;

  app.add_option("--maze", maze_file, "Maze file (ASCII rows over {#,.,S,G})")->required();
  app.add_option("--path", path_file, "Initial path file (one line over {N,E,S,W})")->required();
  app.add_option("--strategy", strategies,
                 "Strategy row (repeatable): optimistic-init, trajectory:<depth>, "
                 "unexplored-sweeping. Default: optimistic-init, trajectory-3/6/12, "
                 "unexplored-sweeping");
  app.add_option("--gamma", gamma, "Discount factor, strictly inside (0,1)")
      ->capture_default_str();
  app.add_option("--seed", seed, "Seed; strategy i uses seed+i")->capture_default_str();
  app.add_option("--depth", depth, "Depth for 'trajectory' given without one")
      ->capture_default_str();
  app.add_option("--trajectories", trajectories, "Simulated trajectories per real step")
      ->capture_default_str();
  app.add_option("--min-priority", min_priority, "Sweeping priority threshold")
      ->capture_default_str();
  app.add_option("--sweeps-per-step", sweeps_per_step, "Sweep backups per real step")
      ->capture_default_str();
  app.add_option("--format", format, "Output table format: tsv or csv")->capture_default_str();
  app.add_option("--episodes-max", episodes_max, "Episode budget per strategy")
      ->capture_default_str();
  app.add_option("--convergence-repeats", convergence_repeats,
                 "Optimal episodes in a row required to stop")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  simex_map* map = nullptr;
  if (simex_map_load_file(maze_file.c_str(), &map) != SIMEX_OK) return fail(maze_file.c_str());
  int64_t path_length = 0;
  int uses_all_actions = 1;
  if (simex_path_check_file(map, path_file.c_str(), &path_length, &uses_all_actions) !=
      SIMEX_OK) {
    simex_map_free(map);
    return fail(path_file.c_str());
  }
  if (!uses_all_actions)
    std::fprintf(stderr,
                 "simex: warning: initial path does not use every action; the effect model "
                 "will stay blind in some directions\n");
  simex_map_free(map);

  simex_experiment* experiment = simex_experiment_new();
  simex_status status = SIMEX_OK;
  const auto set = [&](simex_status s) {
    if (status == SIMEX_OK) status = s;
  };
  set(simex_experiment_set_maze_file(experiment, maze_file.c_str()));
  set(simex_experiment_set_path_file(experiment, path_file.c_str()));
  for (const std::string& spec : strategies)
    set(simex_experiment_add_strategy(experiment, spec.c_str()));
  set(simex_experiment_set_gamma(experiment, gamma));
  set(simex_experiment_set_seed(experiment, seed));
  set(simex_experiment_set_default_depth(experiment, depth));
  set(simex_experiment_set_trajectories(experiment, trajectories));
  set(simex_experiment_set_min_priority(experiment, min_priority));
  set(simex_experiment_set_sweep_updates(experiment, sweeps_per_step));
  set(simex_experiment_set_episode_budget(experiment, episodes_max));
  set(simex_experiment_set_convergence_repeats(experiment, convergence_repeats));
  set(simex_experiment_set_format(experiment, format.c_str()));
  if (status != SIMEX_OK) {
    simex_experiment_free(experiment);
    return fail("configuration");
  }

  simex_results* results = nullptr;
  if (simex_experiment_run(experiment, &results) != SIMEX_OK) {
    simex_experiment_free(experiment);
    return fail("run");
  }

  char* table = nullptr;
  if (simex_results_render_table(results, &table) != SIMEX_OK) {
    simex_results_free(results);
    simex_experiment_free(experiment);
    return fail("render");
  }
  std::fputs(table, stdout);
  simex_text_free(table);

  const bool all_converged = simex_results_all_converged(results) != 0;
  if (!all_converged) {
    for (int row = 0; row < simex_results_rows(results); ++row)
      if (!simex_results_converged(results, row))
        std::fprintf(stderr, "simex: strategy %s did not converge within the episode budget\n",
                     simex_results_strategy(results, row));
  }

  simex_results_free(results);
  simex_experiment_free(experiment);
  return all_converged ? 0 : 2;
}
