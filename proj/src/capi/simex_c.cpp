#if !defined(_WIN32)
#define SIMEX_API __attribute__((visibility("default")))
#else
#define SIMEX_API __declspec(dllexport)
#endif

#include "simex/simex.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/grid.hpp"
#include "core/maze_gen.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <typename Fn>
simex_status guarded(Fn&& fn) {
  try {
    fn();
    return SIMEX_OK;
  } catch (const simex::MalformedMapError& e) {
    set_error(e.what());
    return SIMEX_ERR_MALFORMED_MAP;
  } catch (const simex::UnreachableGoalError& e) {
    set_error(e.what());
    return SIMEX_ERR_UNREACHABLE_GOAL;
  } catch (const simex::MalformedPathError& e) {
    set_error(e.what());
    return SIMEX_ERR_BAD_PATH;
  } catch (const simex::PathDivergedError& e) {
    set_error(e.what());
    return SIMEX_ERR_BAD_PATH;
  } catch (const simex::FileError& e) {
    set_error(e.what());
    return SIMEX_ERR_IO;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return SIMEX_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SIMEX_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return SIMEX_ERR_INTERNAL;
  }
}

char* copy_text(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

struct StrategySpec {
  simex::StrategyKind kind = simex::StrategyKind::kOptimisticInit;
  std::optional<int> depth;
};

std::optional<StrategySpec> parse_strategy(const std::string& spec) {
  if (spec == "optimistic" || spec == "optimistic-init")
    return StrategySpec{simex::StrategyKind::kOptimisticInit, {}};
  if (spec == "unexplored" || spec == "sweeping" || spec == "unexplored-sweeping" ||
      spec == "sweeping-unexplored")
    return StrategySpec{simex::StrategyKind::kUnexploredSweeping, {}};
  if (spec == "trajectory") return StrategySpec{simex::StrategyKind::kTrajectorySampling, {}};
  if (spec.rfind("trajectory:", 0) == 0 || spec.rfind("trajectory-", 0) == 0) {
    const std::string tail = spec.substr(std::strlen("trajectory:"));
    if (!tail.empty() && tail.find_first_not_of("0123456789") == std::string::npos) {
      const long depth = std::strtol(tail.c_str(), nullptr, 10);
      if (depth >= 1 && depth <= 1000000)
        return StrategySpec{simex::StrategyKind::kTrajectorySampling, static_cast<int>(depth)};
    }
  }
  return std::nullopt;
}

}  // namespace

struct simex_map {
  simex::GridMap map;
};

struct simex_experiment {
  simex::ExperimentConfig config;
  std::vector<StrategySpec> specs;
  int default_depth = 6;
  int trajectories_per_step = 10;
  double min_priority = 1e-6;
  int sweep_updates = 500;
};

struct simex_results {
  std::vector<simex::TableRow> rows;
  simex::TableFormat format = simex::TableFormat::kTsv;
  bool path_used_all_actions = true;
};

extern "C" {

const char* simex_status_name(simex_status status) {
  switch (status) {
    case SIMEX_OK:
      return "ok";
    case SIMEX_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case SIMEX_ERR_MALFORMED_MAP:
      return "malformed map";
    case SIMEX_ERR_UNREACHABLE_GOAL:
      return "unreachable goal";
    case SIMEX_ERR_BAD_PATH:
      return "bad path";
    case SIMEX_ERR_IO:
      return "io error";
    case SIMEX_ERR_INTERNAL:
      return "internal error";
  }
  return "?";
}

const char* simex_last_error(void) { return g_last_error.c_str(); }

simex_status simex_map_load_file(const char* filename, simex_map** out) {
  if (!filename || !out) {
    set_error("null argument");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = new simex_map{simex::GridMap::load_file(filename)}; });
}

simex_status simex_map_load_text(const char* text, simex_map** out) {
  if (!text || !out) {
    set_error("null argument");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = new simex_map{simex::GridMap::load_text(text)}; });
}

void simex_map_free(simex_map* map) { delete map; }

int simex_map_width(const simex_map* map) { return map ? map->map.width() : 0; }
int simex_map_height(const simex_map* map) { return map ? map->map.height() : 0; }

int64_t simex_map_free_cells(const simex_map* map) {
  return map ? map->map.free_cell_count() : 0;
}

int64_t simex_map_shortest_path_length(const simex_map* map) {
  return map ? simex::shortest_path_length(map->map) : -1;
}

simex_status simex_path_check_file(const simex_map* map, const char* filename,
                                   int64_t* length_out, int* uses_all_actions_out) {
  if (!map || !filename) {
    set_error("null argument");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const simex::InitialPath path = simex::load_path_file(map->map, filename);
    if (length_out) *length_out = static_cast<int64_t>(path.actions.size());
    if (uses_all_actions_out) *uses_all_actions_out = path.uses_all_actions ? 1 : 0;
  });
}

void simex_gen_config_defaults(simex_gen_config* cfg) {
  if (!cfg) return;
  const simex::MazeGenConfig defaults;
  cfg->style = defaults.style == simex::MazeStyle::kCorridors ? SIMEX_MAZE_CORRIDORS
                                                              : SIMEX_MAZE_HALLS;
  cfg->room_rows = defaults.room_rows;
  cfg->room_cols = defaults.room_cols;
  cfg->detour_blocks = defaults.detour_blocks;
  cfg->hall_width = defaults.hall_width;
  cfg->hall_height = defaults.hall_height;
  cfg->barrier_count = defaults.barrier_count;
  cfg->barrier_gap = defaults.barrier_gap;
  cfg->obstacle_max_len = defaults.obstacle_max_len;
  cfg->free_cells = defaults.free_cells;
  cfg->seed = defaults.seed;
  cfg->goal_distance = defaults.goal_distance;
  cfg->extra_steps_min = defaults.extra_steps_min;
  cfg->extra_steps_max = defaults.extra_steps_max;
}

simex_status simex_generate_maze(const simex_gen_config* cfg, char** maze_text_out,
                                 char** path_text_out) {
  if (!cfg || !maze_text_out || !path_text_out) {
    set_error("null argument");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  if (cfg->style != SIMEX_MAZE_CORRIDORS && cfg->style != SIMEX_MAZE_HALLS) {
    set_error("unknown maze style");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    simex::MazeGenConfig gen;
    gen.style = cfg->style == SIMEX_MAZE_CORRIDORS ? simex::MazeStyle::kCorridors
                                                   : simex::MazeStyle::kHalls;
    gen.room_rows = cfg->room_rows;
    gen.room_cols = cfg->room_cols;
    gen.detour_blocks = cfg->detour_blocks;
    gen.hall_width = cfg->hall_width;
    gen.hall_height = cfg->hall_height;
    gen.barrier_count = cfg->barrier_count;
    gen.barrier_gap = cfg->barrier_gap;
    gen.obstacle_max_len = cfg->obstacle_max_len;
    gen.free_cells = cfg->free_cells;
    gen.seed = cfg->seed;
    gen.goal_distance = cfg->goal_distance;
    gen.extra_steps_min = cfg->extra_steps_min;
    gen.extra_steps_max = cfg->extra_steps_max;
    const simex::GeneratedMaze maze = simex::generate_maze(gen);
    *maze_text_out = copy_text(maze.maze_text);
    *path_text_out = copy_text(maze.path_text);
  });
}

void simex_text_free(char* text) { std::free(text); }

simex_experiment* simex_experiment_new(void) { return new simex_experiment; }

void simex_experiment_free(simex_experiment* experiment) { delete experiment; }

#define SIMEX_REQUIRE(handle)                  \
  do {                                         \
    if (!(handle)) {                           \
      set_error("null handle");                \
      return SIMEX_ERR_INVALID_ARGUMENT;       \
    }                                          \
  } while (0)

simex_status simex_experiment_set_maze_file(simex_experiment* experiment,
                                            const char* filename) {
  SIMEX_REQUIRE(experiment);
  SIMEX_REQUIRE(filename);
  experiment->config.maze_file = filename;
  return SIMEX_OK;
}

simex_status simex_experiment_set_path_file(simex_experiment* experiment,
                                            const char* filename) {
  SIMEX_REQUIRE(experiment);
  SIMEX_REQUIRE(filename);
  experiment->config.path_file = filename;
  return SIMEX_OK;
}

simex_status simex_experiment_add_strategy(simex_experiment* experiment, const char* spec) {
  SIMEX_REQUIRE(experiment);
  SIMEX_REQUIRE(spec);
  const auto parsed = parse_strategy(spec);
  if (!parsed) {
    set_error(std::string("unknown strategy: ") + spec);
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  experiment->specs.push_back(*parsed);
  return SIMEX_OK;
}

simex_status simex_experiment_set_gamma(simex_experiment* experiment, double gamma) {
  SIMEX_REQUIRE(experiment);
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    set_error("gamma must be strictly inside (0,1)");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  experiment->config.gamma = gamma;
  return SIMEX_OK;
}

simex_status simex_experiment_set_seed(simex_experiment* experiment, uint64_t seed) {
  SIMEX_REQUIRE(experiment);
  experiment->config.seed = seed;
  return SIMEX_OK;
}

simex_status simex_experiment_set_default_depth(simex_experiment* experiment, int depth) {
  SIMEX_REQUIRE(experiment);
  if (depth < 1) {
    set_error("depth must be at least 1");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  experiment->default_depth = depth;
  return SIMEX_OK;
}

simex_status simex_experiment_set_trajectories(simex_experiment* experiment, int per_step) {
  SIMEX_REQUIRE(experiment);
  if (per_step < 1) {
    set_error("trajectories per step must be at least 1");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  experiment->trajectories_per_step = per_step;
  return SIMEX_OK;
}

simex_status simex_experiment_set_min_priority(simex_experiment* experiment, double value) {
  SIMEX_REQUIRE(experiment);
  if (!(value > 0.0)) {
    set_error("min priority must be positive");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  experiment->min_priority = value;
  return SIMEX_OK;
}

simex_status simex_experiment_set_sweep_updates(simex_experiment* experiment, int per_step) {
  SIMEX_REQUIRE(experiment);
  if (per_step < 1) {
    set_error("sweep updates per step must be at least 1");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  experiment->sweep_updates = per_step;
  return SIMEX_OK;
}

simex_status simex_experiment_set_episode_budget(simex_experiment* experiment, int64_t budget) {
  SIMEX_REQUIRE(experiment);
  if (budget < 1) {
    set_error("episode budget must be at least 1");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  experiment->config.episode_budget = static_cast<long>(budget);
  return SIMEX_OK;
}

simex_status simex_experiment_set_convergence_repeats(simex_experiment* experiment,
                                                      int repeats) {
  SIMEX_REQUIRE(experiment);
  if (repeats < 1) {
    set_error("convergence repeats must be at least 1");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  experiment->config.convergence_repeats = repeats;
  return SIMEX_OK;
}

simex_status simex_experiment_set_format(simex_experiment* experiment, const char* format) {
  SIMEX_REQUIRE(experiment);
  SIMEX_REQUIRE(format);
  const std::string name = format;
  if (name == "tsv")
    experiment->config.format = simex::TableFormat::kTsv;
  else if (name == "csv")
    experiment->config.format = simex::TableFormat::kCsv;
  else {
    set_error("format must be tsv or csv");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  return SIMEX_OK;
}

simex_status simex_experiment_run(simex_experiment* experiment, simex_results** out) {
  SIMEX_REQUIRE(experiment);
  SIMEX_REQUIRE(out);
  return guarded([&] {
    simex::ExperimentConfig config = experiment->config;
    for (const StrategySpec& spec : experiment->specs) {
      simex::StrategyConfig strategy;
      strategy.kind = spec.kind;
      strategy.trajectory_depth = spec.depth.value_or(experiment->default_depth);
      config.strategies.push_back(strategy);
    }
    if (config.strategies.empty()) config.strategies = simex::default_strategies();
    for (simex::StrategyConfig& strategy : config.strategies) {
      strategy.trajectories_per_step = experiment->trajectories_per_step;
      strategy.min_priority = experiment->min_priority;
      strategy.sweep_updates_per_step = experiment->sweep_updates;
    }

    simex::ExperimentOutcome outcome = simex::run_experiment(config);
    auto* results = new simex_results;
    results->format = config.format;
    results->path_used_all_actions = outcome.path_uses_all_actions;
    for (const auto& row : outcome.rows)
      results->rows.push_back({row.strategy.name(), row.metrics});
    *out = results;
  });
}

void simex_results_free(simex_results* results) { delete results; }

int simex_results_rows(const simex_results* results) {
  return results ? static_cast<int>(results->rows.size()) : 0;
}

const char* simex_results_strategy(const simex_results* results, int row) {
  if (!results || row < 0 || row >= static_cast<int>(results->rows.size())) return nullptr;
  return results->rows[static_cast<std::size_t>(row)].strategy.c_str();
}

int simex_results_converged(const simex_results* results, int row) {
  if (!results || row < 0 || row >= static_cast<int>(results->rows.size())) return 0;
  return results->rows[static_cast<std::size_t>(row)].metrics.converged ? 1 : 0;
}

int64_t simex_results_counter(const simex_results* results, int row, const char* field) {
  if (!results || !field || row < 0 || row >= static_cast<int>(results->rows.size())) return -1;
  const simex::RunMetrics& m = results->rows[static_cast<std::size_t>(row)].metrics;
  const std::string name = field;
  if (name == "steps") return m.total_steps();
  if (name == "forced_steps") return m.forced_steps;
  if (name == "exploration_steps") return m.exploration_steps;
  if (name == "episodes") return m.episodes;
  if (name == "explored_states") return m.explored_states;
  if (name == "explored_state_actions") return m.explored_state_actions;
  if (name == "simulated_backups") return m.simulated_backups;
  return -1;
}

int simex_results_all_converged(const simex_results* results) {
  if (!results) return 0;
  for (const auto& row : results->rows)
    if (!row.metrics.converged) return 0;
  return 1;
}

int simex_results_path_used_all_actions(const simex_results* results) {
  return results && results->path_used_all_actions ? 1 : 0;
}

simex_status simex_results_render_table(const simex_results* results, char** text_out) {
  if (!results || !text_out) {
    set_error("null argument");
    return SIMEX_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *text_out = copy_text(simex::emit_table(results->rows, results->format)); });
}

}  // extern "C"
