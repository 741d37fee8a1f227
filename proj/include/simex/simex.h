/* simex: grid-world simulated-exploration engine, C interface.
 *
 * All functions returning simex_status report failures through the code and
 * leave a human-readable message in simex_last_error() (thread-local).
 * Objects are opaque handles owned by the caller via the matching _free().
 */
#ifndef SIMEX_H
#define SIMEX_H

#include <stdint.h>

#ifndef SIMEX_API
#if defined(_WIN32)
#define SIMEX_API __declspec(dllimport)
#else
#define SIMEX_API
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum simex_status {
  SIMEX_OK = 0,
  SIMEX_ERR_INVALID_ARGUMENT = 1,
  SIMEX_ERR_MALFORMED_MAP = 2,
  SIMEX_ERR_UNREACHABLE_GOAL = 3,
  SIMEX_ERR_BAD_PATH = 4,
  SIMEX_ERR_IO = 5,
  SIMEX_ERR_INTERNAL = 6
} simex_status;

SIMEX_API const char* simex_status_name(simex_status status);
SIMEX_API const char* simex_last_error(void);

/* ---- grid maps ---- */

typedef struct simex_map simex_map;

SIMEX_API simex_status simex_map_load_file(const char* filename, simex_map** out);
SIMEX_API simex_status simex_map_load_text(const char* text, simex_map** out);
SIMEX_API void simex_map_free(simex_map* map);

SIMEX_API int simex_map_width(const simex_map* map);
SIMEX_API int simex_map_height(const simex_map* map);
SIMEX_API int64_t simex_map_free_cells(const simex_map* map);
SIMEX_API int64_t simex_map_shortest_path_length(const simex_map* map);

/* Validates a path file against a map. Optionally reports the path length
 * and whether every action occurs at least once. */
SIMEX_API simex_status simex_path_check_file(const simex_map* map, const char* filename,
                                             int64_t* length_out, int* uses_all_actions_out);

/* ---- maze generation ---- */

typedef enum simex_maze_style {
  SIMEX_MAZE_CORRIDORS = 0, /* braided spanning maze over a room lattice */
  SIMEX_MAZE_HALLS = 1      /* open field, serpentine barriers, obstacles */
} simex_maze_style;

typedef struct simex_gen_config {
  int style; /* simex_maze_style */
  int room_rows;
  int room_cols;
  int detour_blocks;
  int hall_width;
  int hall_height;
  int barrier_count;
  int barrier_gap;
  int obstacle_max_len;
  int64_t free_cells;
  uint64_t seed;
  int64_t goal_distance;
  int64_t extra_steps_min;
  int64_t extra_steps_max;
} simex_gen_config;

SIMEX_API void simex_gen_config_defaults(simex_gen_config* cfg);

/* On success both outputs are malloc'd strings; release with
 * simex_text_free. */
SIMEX_API simex_status simex_generate_maze(const simex_gen_config* cfg, char** maze_text_out,
                                           char** path_text_out);
SIMEX_API void simex_text_free(char* text);

/* ---- experiments ---- */

typedef struct simex_experiment simex_experiment;
typedef struct simex_results simex_results;

SIMEX_API simex_experiment* simex_experiment_new(void);
SIMEX_API void simex_experiment_free(simex_experiment* experiment);

SIMEX_API simex_status simex_experiment_set_maze_file(simex_experiment* experiment,
                                                      const char* filename);
SIMEX_API simex_status simex_experiment_set_path_file(simex_experiment* experiment,
                                                      const char* filename);

/* Accepted specs: "optimistic-init" (or "optimistic"), "trajectory"
 * (default depth), "trajectory:<depth>" / "trajectory-<depth>", and
 * "unexplored-sweeping" (or "unexplored", "sweeping"). Without any added
 * strategy the run compares optimistic-init, trajectory-3/6/12 and
 * unexplored-sweeping. */
SIMEX_API simex_status simex_experiment_add_strategy(simex_experiment* experiment,
                                                     const char* spec);

SIMEX_API simex_status simex_experiment_set_gamma(simex_experiment* experiment, double gamma);
SIMEX_API simex_status simex_experiment_set_seed(simex_experiment* experiment, uint64_t seed);
SIMEX_API simex_status simex_experiment_set_default_depth(simex_experiment* experiment,
                                                          int depth);
SIMEX_API simex_status simex_experiment_set_trajectories(simex_experiment* experiment,
                                                         int per_step);
SIMEX_API simex_status simex_experiment_set_min_priority(simex_experiment* experiment,
                                                         double value);
SIMEX_API simex_status simex_experiment_set_sweep_updates(simex_experiment* experiment,
                                                          int per_step);
SIMEX_API simex_status simex_experiment_set_episode_budget(simex_experiment* experiment,
                                                           int64_t budget);
SIMEX_API simex_status simex_experiment_set_convergence_repeats(simex_experiment* experiment,
                                                                int repeats);
SIMEX_API simex_status simex_experiment_set_format(simex_experiment* experiment,
                                                   const char* format); /* "tsv" or "csv" */

SIMEX_API simex_status simex_experiment_run(simex_experiment* experiment, simex_results** out);

SIMEX_API void simex_results_free(simex_results* results);
SIMEX_API int simex_results_rows(const simex_results* results);
SIMEX_API const char* simex_results_strategy(const simex_results* results, int row);
SIMEX_API int simex_results_converged(const simex_results* results, int row);

/* Fields: steps, forced_steps, exploration_steps, episodes,
 * explored_states, explored_state_actions, simulated_backups.
 * Returns -1 for unknown fields or rows. */
SIMEX_API int64_t simex_results_counter(const simex_results* results, int row,
                                        const char* field);

SIMEX_API int simex_results_all_converged(const simex_results* results);
SIMEX_API int simex_results_path_used_all_actions(const simex_results* results);

/* Renders the result table in the experiment's configured format. The
 * output is a malloc'd string; release with simex_text_free. */
SIMEX_API simex_status simex_results_render_table(const simex_results* results, char** text_out);

#ifdef __cplusplus
}
#endif

#endif /* SIMEX_H */
