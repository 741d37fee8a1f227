#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace simex {

inline constexpr int kActionCount = 4;
inline constexpr ActionId kNorth = 0;
inline constexpr ActionId kEast = 1;
inline constexpr ActionId kSouth = 2;
inline constexpr ActionId kWest = 3;

// Path files spell actions with these characters, in action-id order.
inline constexpr char kActionChars[kActionCount + 1] = "NESW";

const char* action_name(ActionId a);

struct CellPos {
  int row = 0;
  int col = 0;

  friend bool operator==(const CellPos&, const CellPos&) = default;
};

struct StepResult {
  StateId next = 0;
  double reward = 0.0;
  bool terminal = false;
};

/// Rectangular grid of free and wall cells with one start and one goal.
/// States are numbered row-major; the terminal state is one past the last
/// cell and is entered by stepping onto the goal.
class GridMap {
 public:
  static GridMap load_text(const std::string& text);
  static GridMap load_file(const std::string& filename);

  int width() const { return width_; }
  int height() const { return height_; }
  long free_cell_count() const { return free_cells_; }

  bool in_bounds(int row, int col) const {
    return row >= 0 && row < height_ && col >= 0 && col < width_;
  }
  bool free_cell(int row, int col) const {
    return in_bounds(row, col) && !wall_[static_cast<std::size_t>(row) * width_ + col];
  }

  StateId encode(int row, int col) const {
    return static_cast<StateId>(row) * width_ + col;
  }
  CellPos decode(StateId id) const;

  CellPos start_cell() const { return start_; }
  CellPos goal_cell() const { return goal_; }
  StateId start_state() const { return encode(start_.row, start_.col); }
  StateId terminal_state() const { return static_cast<StateId>(width_) * height_; }
  bool is_terminal(StateId s) const { return s == terminal_state(); }

  std::string render() const;

 private:
  int width_ = 0;
  int height_ = 0;
  long free_cells_ = 0;
  std::vector<std::uint8_t> wall_;
  CellPos start_{};
  CellPos goal_{};
};

/// Executes one action. Blocked moves (wall or edge) are silent self-loops;
/// stepping onto the goal yields the terminal state and reward 1.0.
/// Pure function of its inputs.
StepResult step(const GridMap& map, StateId s, ActionId a);

/// Minimal number of actions from start to goal, by breadth-first search
/// over the true map. Test oracle and harness reference, not agent input.
long shortest_path_length(const GridMap& map);

/// BFS distance from `from` to every cell; -1 for walls and unreachable cells.
std::vector<long> bfs_distances(const GridMap& map, CellPos from);

struct InitialPath {
  std::vector<ActionId> actions;
  bool uses_all_actions = false;
};

/// Parses and validates a path file: a single line over {N,E,S,W} whose
/// replay from the start reaches the goal exactly on the final action.
InitialPath load_path_text(const GridMap& map, const std::string& text);
InitialPath load_path_file(const GridMap& map, const std::string& filename);

std::string path_to_text(const std::vector<ActionId>& actions);

}  // namespace simex
