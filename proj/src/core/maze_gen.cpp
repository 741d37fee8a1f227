#include "core/maze_gen.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <stdexcept>
#include <vector>

#include "core/grid.hpp"
#include "core/rng.hpp"

namespace simex {

namespace {

struct Cell {
  int row = 0;
  int col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

constexpr std::array<int, 4> kRowDelta = {-1, 0, 1, 0};
constexpr std::array<int, 4> kColDelta = {0, 1, 0, -1};

class Grid {
 public:
  Grid(int height, int width) : height_(height), width_(width) {
    cells_.assign(static_cast<std::size_t>(height) * width, '#');
  }

  int height() const { return height_; }
  int width() const { return width_; }
  bool in_bounds(int r, int c) const { return r >= 0 && r < height_ && c >= 0 && c < width_; }
  char& at(int r, int c) { return cells_[static_cast<std::size_t>(r) * width_ + c]; }
  char at(int r, int c) const { return cells_[static_cast<std::size_t>(r) * width_ + c]; }
  bool open(int r, int c) const { return in_bounds(r, c) && at(r, c) != '#'; }

  long free_count() const {
    long n = 0;
    for (char ch : cells_) n += ch != '#' ? 1 : 0;
    return n;
  }

  std::string text() const {
    std::string out;
    out.reserve(cells_.size() + static_cast<std::size_t>(height_));
    for (int r = 0; r < height_; ++r) {
      out.append(cells_.begin() + static_cast<std::ptrdiff_t>(r) * width_,
                 cells_.begin() + static_cast<std::ptrdiff_t>(r + 1) * width_);
      out.push_back('\n');
    }
    return out;
  }

 private:
  int height_;
  int width_;
  std::vector<char> cells_;
};

std::size_t cell_id(const Grid& grid, Cell cell) {
  return static_cast<std::size_t>(cell.row) * grid.width() + cell.col;
}

// BFS over open cells, skipping `blocked` ids when given; expansion order
// N,E,S,W so reconstructed paths are canonical for a given grid.
std::vector<long> distances(const Grid& grid, Cell from, const std::vector<std::uint8_t>* blocked,
                            std::vector<int>* parent_action) {
  std::vector<long> dist(static_cast<std::size_t>(grid.height()) * grid.width(), -1);
  if (parent_action)
    parent_action->assign(static_cast<std::size_t>(grid.height()) * grid.width(), -1);
  if (!grid.open(from.row, from.col)) return dist;
  std::deque<Cell> queue{from};
  dist[cell_id(grid, from)] = 0;
  while (!queue.empty()) {
    const Cell cur = queue.front();
    queue.pop_front();
    for (int a = 0; a < 4; ++a) {
      const Cell next{cur.row + kRowDelta[static_cast<std::size_t>(a)],
                      cur.col + kColDelta[static_cast<std::size_t>(a)]};
      if (!grid.open(next.row, next.col)) continue;
      if (blocked && (*blocked)[cell_id(grid, next)]) continue;
      if (dist[cell_id(grid, next)] >= 0) continue;
      dist[cell_id(grid, next)] = dist[cell_id(grid, cur)] + 1;
      if (parent_action) (*parent_action)[cell_id(grid, next)] = a;
      queue.push_back(next);
    }
  }
  return dist;
}

std::vector<ActionId> walk_back(const Grid& grid, Cell to, const std::vector<long>& dist,
                                const std::vector<int>& parent_action) {
  std::vector<ActionId> actions;
  Cell cur = to;
  while (dist[cell_id(grid, cur)] > 0) {
    const int a = parent_action[cell_id(grid, cur)];
    actions.push_back(static_cast<ActionId>(a));
    cur = {cur.row - kRowDelta[static_cast<std::size_t>(a)],
           cur.col - kColDelta[static_cast<std::size_t>(a)]};
  }
  std::reverse(actions.begin(), actions.end());
  return actions;
}

std::vector<Cell> cells_of_path(Cell start, const std::vector<ActionId>& actions) {
  std::vector<Cell> cells{start};
  for (ActionId a : actions) {
    const Cell prev = cells.back();
    cells.push_back({prev.row + kRowDelta[static_cast<std::size_t>(a)],
                     prev.col + kColDelta[static_cast<std::size_t>(a)]});
  }
  return cells;
}

void carve_spanning_maze(Grid& grid, int room_rows, int room_cols, Cell start_room, Rng& rng) {
  const auto room_cell = [](Cell room) { return Cell{2 * room.row + 1, 2 * room.col + 1}; };
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(room_rows) * room_cols, 0);
  const auto room_id = [&](Cell room) {
    return static_cast<std::size_t>(room.row) * room_cols + room.col;
  };

  std::vector<Cell> stack{start_room};
  visited[room_id(start_room)] = 1;
  grid.at(room_cell(start_room).row, room_cell(start_room).col) = '.';
  while (!stack.empty()) {
    const Cell cur = stack.back();
    std::vector<int> options;
    for (int a = 0; a < 4; ++a) {
      const Cell next{cur.row + kRowDelta[static_cast<std::size_t>(a)],
                      cur.col + kColDelta[static_cast<std::size_t>(a)]};
      if (next.row < 0 || next.row >= room_rows || next.col < 0 || next.col >= room_cols)
        continue;
      if (!visited[room_id(next)]) options.push_back(a);
    }
    if (options.empty()) {
      stack.pop_back();
      continue;
    }
    const int a = options[static_cast<std::size_t>(rand_below(rng, options.size()))];
    const Cell next{cur.row + kRowDelta[static_cast<std::size_t>(a)],
                    cur.col + kColDelta[static_cast<std::size_t>(a)]};
    const Cell wall{room_cell(cur).row + kRowDelta[static_cast<std::size_t>(a)],
                    room_cell(cur).col + kColDelta[static_cast<std::size_t>(a)]};
    grid.at(wall.row, wall.col) = '.';
    grid.at(room_cell(next).row, room_cell(next).col) = '.';
    visited[room_id(next)] = 1;
    stack.push_back(next);
  }
}

void braid_to_target(Grid& grid, long target, Rng& rng) {
  while (grid.free_count() < target) {
    std::vector<Cell> candidates;
    for (int r = 1; r < grid.height() - 1; ++r) {
      for (int c = 1; c < grid.width() - 1; ++c) {
        if (grid.at(r, c) != '#') continue;
        const bool horizontal = grid.open(r, c - 1) && grid.open(r, c + 1);
        const bool vertical = grid.open(r - 1, c) && grid.open(r + 1, c);
        if (horizontal || vertical) candidates.push_back({r, c});
      }
    }
    if (candidates.empty())
      throw std::invalid_argument("free-cell target exceeds what the lattice can hold");
    shuffle(candidates, rng);
    const long needed = target - grid.free_count();
    for (long i = 0; i < needed && i < static_cast<long>(candidates.size()); ++i)
      grid.at(candidates[static_cast<std::size_t>(i)].row,
              candidates[static_cast<std::size_t>(i)].col) = '.';
  }
}

Grid build_corridor_grid(const MazeGenConfig& cfg, Rng& rng, Cell* start_out) {
  if (cfg.room_rows < 2 || cfg.room_cols < 2)
    throw std::invalid_argument("need at least a 2x2 room lattice");
  if (cfg.free_cells < 2L * cfg.room_rows * cfg.room_cols - 1)
    throw std::invalid_argument("free-cell target below the spanning-maze minimum");

  Grid grid(2 * cfg.room_rows + 1, 2 * cfg.room_cols + 1);
  carve_spanning_maze(grid, cfg.room_rows, cfg.room_cols, {0, cfg.room_cols - 1}, rng);
  braid_to_target(grid, cfg.free_cells, rng);
  *start_out = {1, 2 * cfg.room_cols - 1};
  return grid;
}

bool free_cells_connected(const Grid& grid, Cell from) {
  const auto dist = distances(grid, from, nullptr, nullptr);
  for (int r = 0; r < grid.height(); ++r)
    for (int c = 0; c < grid.width(); ++c)
      if (grid.open(r, c) && dist[cell_id(grid, {r, c})] < 0) return false;
  return true;
}

Grid build_hall_grid(const MazeGenConfig& cfg, Rng& rng, Cell* start_out) {
  if (cfg.hall_width < 8 || cfg.hall_height < 8)
    throw std::invalid_argument("hall interior too small");
  Grid grid(cfg.hall_height + 2, cfg.hall_width + 2);
  for (int r = 1; r <= cfg.hall_height; ++r)
    for (int c = 1; c <= cfg.hall_width; ++c) grid.at(r, c) = '.';
  const Cell start{1, cfg.hall_width};
  *start_out = start;

  // Serpentine barriers: full-height walls with an alternating top/bottom
  // gap, which stretches the start-goal distance far beyond the field size.
  for (int k = 1; k <= cfg.barrier_count; ++k) {
    const int col = 1 + k * (cfg.hall_width - 1) / (cfg.barrier_count + 1);
    const bool gap_at_top = k % 2 == 0;
    for (int r = 1; r <= cfg.hall_height; ++r) {
      const bool in_gap = gap_at_top ? r <= cfg.barrier_gap
                                     : r > cfg.hall_height - cfg.barrier_gap;
      if (!in_gap) grid.at(r, col) = '#';
    }
  }
  if (grid.free_count() < cfg.free_cells)
    throw std::invalid_argument("free-cell target exceeds the hall interior");

  // Scatter short wall segments until the free-cell target is hit exactly.
  int stale = 0;
  while (grid.free_count() > cfg.free_cells && stale < 10000) {
    const long excess = grid.free_count() - cfg.free_cells;
    const int r = 1 + static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(cfg.hall_height)));
    const int c = 1 + static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(cfg.hall_width)));
    const bool vertical = rand_below(rng, 2) == 0;
    const long max_len = std::min<long>(cfg.obstacle_max_len, excess);
    const long len = 1 + static_cast<long>(rand_below(rng, static_cast<std::uint64_t>(max_len)));

    std::vector<Cell> segment;
    for (long i = 0; i < len; ++i) {
      const Cell cell{vertical ? r + static_cast<int>(i) : r,
                      vertical ? c : c + static_cast<int>(i)};
      if (!grid.open(cell.row, cell.col) || cell == start) break;
      segment.push_back(cell);
    }
    if (segment.empty()) {
      ++stale;
      continue;
    }
    for (const Cell& cell : segment) grid.at(cell.row, cell.col) = '#';
    if (!free_cells_connected(grid, start)) {
      for (const Cell& cell : segment) grid.at(cell.row, cell.col) = '.';
      ++stale;
      continue;
    }
    stale = 0;
  }
  if (grid.free_count() != cfg.free_cells)
    throw std::runtime_error("could not reach the free-cell target; adjust hall settings");
  return grid;
}

// Blocks route cells one at a time, keeping a block only when a bounded
// local detour around it exists. Returns an empty path when the attempt
// produced nothing useful.
std::vector<ActionId> corridor_detour_candidate(const Grid& grid, Cell start, Cell goal,
                                                const std::vector<ActionId>& shortest,
                                                long optimal, const MazeGenConfig& cfg,
                                                Rng& rng) {
  const long margin = 3;
  std::vector<std::uint8_t> blocked(static_cast<std::size_t>(grid.height()) * grid.width(), 0);
  std::vector<ActionId> current = shortest;

  for (int placed = 0; placed < cfg.detour_blocks; ++placed) {
    const std::vector<Cell> route = cells_of_path(start, current);
    std::vector<long> order;
    for (long i = margin; i < static_cast<long>(route.size()) - margin; ++i) order.push_back(i);
    shuffle(order, rng);

    bool advanced = false;
    for (long pick : order) {
      const Cell cell = route[static_cast<std::size_t>(pick)];
      if (blocked[cell_id(grid, cell)]) continue;
      blocked[cell_id(grid, cell)] = 1;
      std::vector<int> parent;
      const auto dist = distances(grid, start, &blocked, &parent);
      const long len = dist[cell_id(grid, goal)];
      if (len <= static_cast<long>(current.size()) || len - optimal > cfg.extra_steps_max) {
        blocked[cell_id(grid, cell)] = 0;
        continue;
      }
      current = walk_back(grid, goal, dist, parent);
      advanced = true;
      break;
    }
    if (!advanced) break;
  }
  return current.size() > shortest.size() ? current : std::vector<ActionId>{};
}

// Routes through one off-route waypoint whose combined distance lands in
// the extra-steps window.
std::vector<ActionId> waypoint_detour_candidate(const Grid& grid, Cell start, Cell goal,
                                                long optimal, const MazeGenConfig& cfg,
                                                Rng& rng) {
  std::vector<int> parent_from_start;
  const auto dist_start = distances(grid, start, nullptr, &parent_from_start);
  const auto dist_goal = distances(grid, goal, nullptr, nullptr);

  std::vector<Cell> candidates;
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      const Cell cell{r, c};
      if (!grid.open(r, c) || cell == start || cell == goal) continue;
      const long ds = dist_start[cell_id(grid, cell)];
      const long dg = dist_goal[cell_id(grid, cell)];
      if (ds < 0 || dg < 0) continue;
      const long extra = ds + dg - optimal;
      if (extra >= cfg.extra_steps_min && extra <= cfg.extra_steps_max) candidates.push_back(cell);
    }
  }
  if (candidates.empty()) return {};
  const Cell waypoint = candidates[static_cast<std::size_t>(rand_below(rng, candidates.size()))];

  std::vector<ActionId> path = walk_back(grid, waypoint, dist_start, parent_from_start);
  std::vector<int> parent_from_waypoint;
  const auto dist_waypoint = distances(grid, waypoint, nullptr, &parent_from_waypoint);
  const std::vector<ActionId> tail = walk_back(grid, goal, dist_waypoint, parent_from_waypoint);
  path.insert(path.end(), tail.begin(), tail.end());

  // Reject routes that brush the goal before the end.
  const std::vector<Cell> route = cells_of_path(start, path);
  for (std::size_t i = 0; i + 1 < route.size(); ++i)
    if (route[i] == goal) return {};
  return path;
}

// Ensures every action occurs by inserting a there-and-back wiggle into a
// free off-goal cell for each missing one.
bool patch_missing_actions(const Grid& grid, Cell start, Cell goal,
                           std::vector<ActionId>& path) {
  for (ActionId a = 0; a < kActionCount; ++a) {
    bool used = false;
    for (ActionId got : path) used = used || got == a;
    if (used) continue;

    const std::vector<Cell> route = cells_of_path(start, path);
    bool patched = false;
    for (std::size_t i = 0; i + 1 < route.size() && !patched; ++i) {
      const Cell side{route[i].row + kRowDelta[static_cast<std::size_t>(a)],
                      route[i].col + kColDelta[static_cast<std::size_t>(a)]};
      if (!grid.open(side.row, side.col) || side == goal) continue;
      const ActionId back = static_cast<ActionId>((a + 2) % kActionCount);
      path.insert(path.begin() + static_cast<std::ptrdiff_t>(i), {a, back});
      patched = true;
    }
    if (!patched) return false;
  }
  return true;
}

}  // namespace

GeneratedMaze generate_maze(const MazeGenConfig& cfg) {
  Rng rng(cfg.seed);
  Cell start{};
  Grid grid = cfg.style == MazeStyle::kCorridors ? build_corridor_grid(cfg, rng, &start)
                                                 : build_hall_grid(cfg, rng, &start);

  std::vector<int> parent_action;
  const auto dist = distances(grid, start, nullptr, &parent_action);

  Cell goal{-1, -1};
  long best_gap = -1;
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      const long d = dist[cell_id(grid, {r, c})];
      if (d < 1) continue;
      const long gap = std::abs(d - cfg.goal_distance);
      if (best_gap < 0 || gap < best_gap) {
        best_gap = gap;
        goal = {r, c};
      }
    }
  }
  if (goal.row < 0) throw std::invalid_argument("maze has no reachable cell for the goal");

  const std::vector<ActionId> shortest = walk_back(grid, goal, dist, parent_action);
  const long optimal = static_cast<long>(shortest.size());

  std::vector<ActionId> initial;
  for (int attempt = 0; attempt < cfg.max_attempts && initial.empty(); ++attempt) {
    std::vector<ActionId> candidate =
        cfg.style == MazeStyle::kCorridors
            ? corridor_detour_candidate(grid, start, goal, shortest, optimal, cfg, rng)
            : waypoint_detour_candidate(grid, start, goal, optimal, cfg, rng);
    if (candidate.empty()) continue;
    if (!patch_missing_actions(grid, start, goal, candidate)) continue;
    const long extra = static_cast<long>(candidate.size()) - optimal;
    if (extra < cfg.extra_steps_min || extra > cfg.extra_steps_max) continue;
    initial = std::move(candidate);
  }
  if (initial.empty())
    throw std::runtime_error("could not construct an initial path; adjust detour settings");

  grid.at(start.row, start.col) = 'S';
  grid.at(goal.row, goal.col) = 'G';

  GeneratedMaze out;
  out.maze_text = grid.text();
  out.path_text = path_to_text(initial);
  out.shortest_path_length = optimal;
  out.initial_path_length = static_cast<long>(initial.size());

  // Self-check through the real loader: the maze must parse and the path
  // must replay cleanly.
  const GridMap map = GridMap::load_text(out.maze_text);
  load_path_text(map, out.path_text);
  if (map.free_cell_count() != cfg.free_cells)
    throw std::runtime_error("generated maze missed the free-cell target");
  if (shortest_path_length(map) != optimal)
    throw std::runtime_error("generated maze shortest path changed under reload");
  return out;
}

}  // namespace simex
