// Deterministic maze generator. Produces a braided grid maze with a chosen
// free-cell count, a goal near a requested distance from the top-right start
// and a suboptimal initial path that detours around a few cells of the
// shortest route.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <string>

#include <CLI11.hpp>

#include "simex/simex.h"

namespace {

bool write_file(const std::string& filename, const char* text) {
  std::FILE* out = std::fopen(filename.c_str(), "wb");
  if (!out) return false;
  const bool ok = std::fputs(text, out) >= 0;
  return std::fclose(out) == 0 && ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generates a maze file and a matching suboptimal initial path file"};

  simex_gen_config cfg;
  simex_gen_config_defaults(&cfg);
  std::string style = "corridors";
  std::string maze_out = "maze.txt";
  std::string path_out = "path.txt";

  app.add_option("--style", style, "Maze style: corridors or halls")->capture_default_str();
  app.add_option("--room-rows", cfg.room_rows, "Rooms per column (corridors)")
      ->capture_default_str();
  app.add_option("--room-cols", cfg.room_cols, "Rooms per row (corridors)")
      ->capture_default_str();
  app.add_option("--blocks", cfg.detour_blocks,
                 "Shortest-route cells to detour around (corridors)")
      ->capture_default_str();
  app.add_option("--hall-width", cfg.hall_width, "Interior width (halls)")
      ->capture_default_str();
  app.add_option("--hall-height", cfg.hall_height, "Interior height (halls)")
      ->capture_default_str();
  app.add_option("--barriers", cfg.barrier_count, "Serpentine barrier count (halls)")
      ->capture_default_str();
  app.add_option("--barrier-gap", cfg.barrier_gap, "Barrier gap size (halls)")
      ->capture_default_str();
  app.add_option("--obstacle-max", cfg.obstacle_max_len, "Longest obstacle segment (halls)")
      ->capture_default_str();
  app.add_option("--free-cells", cfg.free_cells, "Exact number of free cells")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();
  app.add_option("--goal-distance", cfg.goal_distance, "Preferred start-goal distance")
      ->capture_default_str();
  app.add_option("--extra-min", cfg.extra_steps_min, "Minimum extra steps of the initial path")
      ->capture_default_str();
  app.add_option("--extra-max", cfg.extra_steps_max, "Maximum extra steps of the initial path")
      ->capture_default_str();
  app.add_option("--maze-out", maze_out, "Maze output file")->capture_default_str();
  app.add_option("--path-out", path_out, "Path output file")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (style == "corridors")
    cfg.style = SIMEX_MAZE_CORRIDORS;
  else if (style == "halls")
    cfg.style = SIMEX_MAZE_HALLS;
  else {
    std::fprintf(stderr, "simex-genmaze: unknown style '%s'\n", style.c_str());
    return 1;
  }

  char* maze_text = nullptr;
  char* path_text = nullptr;
  if (simex_generate_maze(&cfg, &maze_text, &path_text) != SIMEX_OK) {
    std::fprintf(stderr, "simex-genmaze: %s\n", simex_last_error());
    return 1;
  }

  if (!write_file(maze_out, maze_text) || !write_file(path_out, path_text)) {
    std::fprintf(stderr, "simex-genmaze: cannot write output files\n");
    simex_text_free(maze_text);
    simex_text_free(path_text);
    return 1;
  }

  simex_map* map = nullptr;
  if (simex_map_load_text(maze_text, &map) == SIMEX_OK) {
    std::printf("maze %s: %dx%d, %lld free cells, shortest path %lld\n", maze_out.c_str(),
                simex_map_width(map), simex_map_height(map),
                static_cast<long long>(simex_map_free_cells(map)),
                static_cast<long long>(simex_map_shortest_path_length(map)));
    std::printf("path %s: %zu steps\n", path_out.c_str(), std::strcspn(path_text, "\n"));
    simex_map_free(map);
  }

  simex_text_free(maze_text);
  simex_text_free(path_text);
  return 0;
}
