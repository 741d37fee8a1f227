#pragma once

#include <cstdint>
#include <string>

namespace simex {

enum class MazeStyle {
  kCorridors,  // spanning maze over a room lattice, braided to the cell target
  kHalls,      // open field with serpentine barriers and scattered obstacles
};

/// Deterministic maze construction. The start sits in the top-right corner;
/// the goal is placed at the requested breadth-first distance (or as close
/// as the maze allows). The initial path is a bounded-length detour off the
/// shortest route: corridor mazes block a few route cells and re-route
/// around them, hall mazes route through an off-route waypoint. Paths that
/// miss an action get a there-and-back wiggle patched in.
struct MazeGenConfig {
  MazeStyle style = MazeStyle::kCorridors;

  // corridors
  int room_rows = 40;
  int room_cols = 40;
  int detour_blocks = 6;

  // halls (interior sizes, excluding the border wall)
  int hall_width = 62;
  int hall_height = 58;
  int barrier_count = 3;
  int barrier_gap = 3;
  int obstacle_max_len = 6;

  long free_cells = 3277;
  std::uint64_t seed = 1;
  long goal_distance = 203;
  long extra_steps_min = 10;
  long extra_steps_max = 25;
  int max_attempts = 500;
};

struct GeneratedMaze {
  std::string maze_text;
  std::string path_text;
  long shortest_path_length = 0;
  long initial_path_length = 0;
};

GeneratedMaze generate_maze(const MazeGenConfig& cfg);

}  // namespace simex
