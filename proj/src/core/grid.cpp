#include "core/grid.hpp"

#include <array>
#include <deque>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace simex {

namespace {

constexpr std::array<int, kActionCount> kRowDelta = {-1, 0, 1, 0};
constexpr std::array<int, kActionCount> kColDelta = {0, 1, 0, -1};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string read_file(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) throw FileError("cannot open file: " + filename);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

const char* action_name(ActionId a) {
  static constexpr std::array<const char*, kActionCount> names = {"North", "East", "South",
                                                                  "West"};
  if (a < 0 || a >= kActionCount) return "?";
  return names[static_cast<std::size_t>(a)];
}

GridMap GridMap::load_text(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw MalformedMapError("map is empty");

  GridMap map;
  map.height_ = static_cast<int>(lines.size());
  map.width_ = static_cast<int>(lines[0].size());
  if (map.width_ == 0) throw MalformedMapError("map has an empty row");
  map.wall_.assign(static_cast<std::size_t>(map.width_) * map.height_, 0);

  int starts = 0;
  int goals = 0;
  for (int r = 0; r < map.height_; ++r) {
    const std::string& row = lines[static_cast<std::size_t>(r)];
    if (static_cast<int>(row.size()) != map.width_)
      throw MalformedMapError("ragged row " + std::to_string(r));
    for (int c = 0; c < map.width_; ++c) {
      switch (row[static_cast<std::size_t>(c)]) {
        case '#':
          map.wall_[static_cast<std::size_t>(r) * map.width_ + c] = 1;
          break;
        case '.':
          break;
        case 'S':
          ++starts;
          map.start_ = {r, c};
          break;
        case 'G':
          ++goals;
          map.goal_ = {r, c};
          break;
        default:
          throw MalformedMapError(std::string("bad character '") + row[static_cast<std::size_t>(c)] +
                                  "' at row " + std::to_string(r));
      }
    }
  }
  if (starts != 1) throw MalformedMapError("map must contain exactly one S");
  if (goals != 1) throw MalformedMapError("map must contain exactly one G");
  if (map.start_ == map.goal_) throw MalformedMapError("start and goal coincide");

  for (const auto& cell : map.wall_) map.free_cells_ += cell ? 0 : 1;

  const auto dist = bfs_distances(map, map.start_);
  if (dist[static_cast<std::size_t>(map.encode(map.goal_.row, map.goal_.col))] < 0)
    throw UnreachableGoalError("no path of free cells from start to goal");
  return map;
}

GridMap GridMap::load_file(const std::string& filename) {
  return load_text(read_file(filename));
}

CellPos GridMap::decode(StateId id) const {
  return {static_cast<int>(id / width_), static_cast<int>(id % width_)};
}

std::string GridMap::render() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(height_) * (width_ + 1));
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      char ch = wall_[static_cast<std::size_t>(r) * width_ + c] ? '#' : '.';
      if (CellPos{r, c} == start_) ch = 'S';
      if (CellPos{r, c} == goal_) ch = 'G';
      out.push_back(ch);
    }
    out.push_back('\n');
  }
  return out;
}

StepResult step(const GridMap& map, StateId s, ActionId a) {
  if (map.is_terminal(s)) throw TerminalStateError("step from the terminal state");
  if (s < 0 || s > map.terminal_state())
    throw std::invalid_argument("state id out of range: " + std::to_string(s));
  const CellPos pos = map.decode(s);
  if (!map.free_cell(pos.row, pos.col))
    throw std::invalid_argument("state id does not name a free cell: " + std::to_string(s));
  if (a < 0 || a >= kActionCount)
    throw std::invalid_argument("action id out of range: " + std::to_string(a));

  const int nr = pos.row + kRowDelta[static_cast<std::size_t>(a)];
  const int nc = pos.col + kColDelta[static_cast<std::size_t>(a)];
  if (!map.free_cell(nr, nc)) return {s, 0.0, false};
  if (CellPos{nr, nc} == map.goal_cell()) return {map.terminal_state(), 1.0, true};
  return {map.encode(nr, nc), 0.0, false};
}

std::vector<long> bfs_distances(const GridMap& map, CellPos from) {
  std::vector<long> dist(static_cast<std::size_t>(map.width()) * map.height(), -1);
  if (!map.free_cell(from.row, from.col)) return dist;
  std::deque<CellPos> queue{from};
  dist[static_cast<std::size_t>(map.encode(from.row, from.col))] = 0;
  while (!queue.empty()) {
    const CellPos cur = queue.front();
    queue.pop_front();
    const long d = dist[static_cast<std::size_t>(map.encode(cur.row, cur.col))];
    for (ActionId a = 0; a < kActionCount; ++a) {
      const int nr = cur.row + kRowDelta[static_cast<std::size_t>(a)];
      const int nc = cur.col + kColDelta[static_cast<std::size_t>(a)];
      if (!map.free_cell(nr, nc)) continue;
      auto& slot = dist[static_cast<std::size_t>(map.encode(nr, nc))];
      if (slot >= 0) continue;
      slot = d + 1;
      queue.push_back({nr, nc});
    }
  }
  return dist;
}

long shortest_path_length(const GridMap& map) {
  const auto dist = bfs_distances(map, map.start_cell());
  return dist[static_cast<std::size_t>(map.encode(map.goal_cell().row, map.goal_cell().col))];
}

InitialPath load_path_text(const GridMap& map, const std::string& text) {
  std::string line;
  std::size_t consumed = 0;
  for (char ch : text) {
    if (ch == '\n' || ch == '\r') break;
    line.push_back(ch);
    ++consumed;
  }
  for (std::size_t i = consumed; i < text.size(); ++i)
    if (text[i] != '\n' && text[i] != '\r')
      throw MalformedPathError("path file has content after the first line");
  if (line.empty()) throw MalformedPathError("path file is empty");

  InitialPath path;
  for (char ch : line) {
    const char* hit = nullptr;
    for (int a = 0; a < kActionCount; ++a)
      if (kActionChars[a] == ch) hit = &kActionChars[a];
    if (!hit) throw MalformedPathError(std::string("bad path character '") + ch + "'");
    path.actions.push_back(static_cast<ActionId>(hit - kActionChars));
  }

  // Replay the whole path; it must arrive at the goal exactly on the
  // final action.
  StateId s = map.start_state();
  std::array<bool, kActionCount> used{};
  for (std::size_t i = 0; i < path.actions.size(); ++i) {
    if (map.is_terminal(s))
      throw MalformedPathError("path reaches the goal before its final action");
    used[static_cast<std::size_t>(path.actions[i])] = true;
    s = step(map, s, path.actions[i]).next;
  }
  if (!map.is_terminal(s)) throw MalformedPathError("path does not end at the goal");

  path.uses_all_actions = true;
  for (bool u : used) path.uses_all_actions = path.uses_all_actions && u;
  return path;
}

InitialPath load_path_file(const GridMap& map, const std::string& filename) {
  return load_path_text(map, read_file(filename));
}

std::string path_to_text(const std::vector<ActionId>& actions) {
  std::string out;
  out.reserve(actions.size() + 1);
  for (ActionId a : actions) out.push_back(kActionChars[a]);
  out.push_back('\n');
  return out;
}

}  // namespace simex
