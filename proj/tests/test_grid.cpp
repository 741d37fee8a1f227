#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "core/errors.hpp"
#include "core/grid.hpp"
#include "core/rng.hpp"
#include "oracle.hpp"

using namespace simex;

namespace {

std::string read_file(const std::string& filename) {
  std::ifstream in(filename);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::string kSmallMaze = std::string(SIMEX_DATA_DIR) + "/maze_small.txt";
const std::string kSmallPath = std::string(SIMEX_DATA_DIR) + "/path_small.txt";
const std::string kMainMaze = std::string(SIMEX_DATA_DIR) + "/maze_main.txt";
const std::string kMainPath = std::string(SIMEX_DATA_DIR) + "/path_main.txt";

}  // namespace

TEST_CASE("smallest solvable map decodes start and goal") {
  const GridMap map = GridMap::load_text("S.G");
  CHECK(map.width() == 3);
  CHECK(map.height() == 1);
  CHECK(map.start_cell() == CellPos{0, 0});
  CHECK(map.goal_cell() == CellPos{0, 2});
  CHECK(map.free_cell_count() == 3);
  CHECK(map.terminal_state() == 3);
}

TEST_CASE("wall between start and goal is rejected") {
  CHECK_THROWS_AS(GridMap::load_text("S#G"), UnreachableGoalError);
}

TEST_CASE("malformed maps are rejected") {
  CHECK_THROWS_AS(GridMap::load_text(""), MalformedMapError);
  CHECK_THROWS_AS(GridMap::load_text("S.G\n.."), MalformedMapError);   // ragged
  CHECK_THROWS_AS(GridMap::load_text("S.x\n..G"), MalformedMapError);  // bad char
  CHECK_THROWS_AS(GridMap::load_text("..G"), MalformedMapError);       // no S
  CHECK_THROWS_AS(GridMap::load_text("S.."), MalformedMapError);       // no G
  CHECK_THROWS_AS(GridMap::load_text("SSG"), MalformedMapError);       // two S
  CHECK_THROWS_AS(GridMap::load_text("SGG"), MalformedMapError);       // two G
}

TEST_CASE("step moves, bumps and enters the goal") {
  const GridMap map = GridMap::load_text("S.G");
  const StepResult east = step(map, 0, kEast);
  CHECK(east.next == 1);
  CHECK(east.reward == 0.0);
  CHECK_FALSE(east.terminal);

  const StepResult enter = step(map, 1, kEast);
  CHECK(enter.next == map.terminal_state());
  CHECK(enter.reward == 1.0);
  CHECK(enter.terminal);

  const StepResult bump = step(map, 0, kWest);
  CHECK(bump.next == 0);
  CHECK(bump.reward == 0.0);
  CHECK_FALSE(bump.terminal);

  CHECK_THROWS_AS(step(map, map.terminal_state(), kEast), TerminalStateError);
}

TEST_CASE("step is deterministic") {
  const GridMap map = GridMap::load_file(kSmallMaze);
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) {
      if (!map.free_cell(r, c)) continue;
      for (ActionId a = 0; a < kActionCount; ++a) {
        const StepResult first = step(map, map.encode(r, c), a);
        const StepResult second = step(map, map.encode(r, c), a);
        CHECK(first.next == second.next);
        CHECK(first.reward == second.reward);
        CHECK(first.terminal == second.terminal);
      }
    }
  }
}

TEST_CASE("self-loop exactly when the move is blocked") {
  const GridMap map = GridMap::load_file(kSmallMaze);
  const int row_delta[] = {-1, 0, 1, 0};
  const int col_delta[] = {0, 1, 0, -1};
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) {
      if (!map.free_cell(r, c)) continue;
      for (ActionId a = 0; a < kActionCount; ++a) {
        const bool blocked = !map.free_cell(r + row_delta[a], c + col_delta[a]);
        const StepResult res = step(map, map.encode(r, c), a);
        CHECK((res.next == map.encode(r, c)) == blocked);
      }
    }
  }
}

TEST_CASE("state encoding is a bijection over free cells") {
  const GridMap map = GridMap::load_file(kSmallMaze);
  std::set<StateId> seen;
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) {
      if (!map.free_cell(r, c)) continue;
      const StateId id = map.encode(r, c);
      CHECK(seen.insert(id).second);
      const CellPos back = map.decode(id);
      CHECK(back.row == r);
      CHECK(back.col == c);
    }
  }
}

TEST_CASE("shortest path length matches an independent BFS") {
  CHECK(shortest_path_length(GridMap::load_text("S.G")) == 2);

  const std::string small_text = read_file(kSmallMaze);
  const GridMap small = GridMap::load_text(small_text);
  CHECK(shortest_path_length(small) == oracle::bfs_shortest_path(small_text));

  const std::string main_text = read_file(kMainMaze);
  const GridMap main_map = GridMap::load_text(main_text);
  CHECK(shortest_path_length(main_map) == oracle::bfs_shortest_path(main_text));
}

TEST_CASE("bundled main maze has the expected free-cell count") {
  // Count the free characters straight off the file, independently of the
  // loader.
  const std::string text = read_file(kMainMaze);
  long free_chars = 0;
  for (char ch : text)
    if (ch == '.' || ch == 'S' || ch == 'G') ++free_chars;
  CHECK(free_chars == 3277);
  CHECK(GridMap::load_text(text).free_cell_count() == free_chars);
}

TEST_CASE("initial path replays to the goal with reward 1.0") {
  const GridMap map = GridMap::load_file(kSmallMaze);
  const InitialPath path = load_path_file(map, kSmallPath);
  CHECK(path.uses_all_actions);

  StateId s = map.start_state();
  double total_reward = 0.0;
  for (ActionId a : path.actions) {
    const StepResult res = step(map, s, a);
    total_reward += res.reward;
    s = res.next;
  }
  CHECK(map.is_terminal(s));
  CHECK(total_reward == 1.0);
}

TEST_CASE("bundled initial paths are suboptimal by construction") {
  const GridMap small = GridMap::load_file(kSmallMaze);
  CHECK(static_cast<long>(load_path_file(small, kSmallPath).actions.size()) >
        shortest_path_length(small));

  const GridMap main_map = GridMap::load_file(kMainMaze);
  CHECK(static_cast<long>(load_path_file(main_map, kMainPath).actions.size()) >
        shortest_path_length(main_map));
}

TEST_CASE("rendering a map reproduces its text") {
  const std::string text = read_file(kSmallMaze);
  CHECK(GridMap::load_text(text).render() == text);
  const std::string main_text = read_file(kMainMaze);
  CHECK(GridMap::load_text(main_text).render() == main_text);
}

TEST_CASE("the loader rejects junk without crashing") {
  simex::Rng rng(31);
  const char alphabet[] = {'#', '.', 'S', 'G', '\n', 'x'};
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    const std::size_t length = 1 + rand_below(rng, 40);
    for (std::size_t j = 0; j < length; ++j)
      text.push_back(alphabet[rand_below(rng, sizeof alphabet)]);
    try {
      const GridMap map = GridMap::load_text(text);
      CHECK(map.free_cell_count() >= 2);  // at least S and G
    } catch (const MalformedMapError&) {
    } catch (const UnreachableGoalError&) {
    }
  }
}

TEST_CASE("path files are validated on load") {
  const GridMap map = GridMap::load_text("S.G");
  CHECK_THROWS_AS(load_path_text(map, ""), MalformedPathError);
  CHECK_THROWS_AS(load_path_text(map, "EX"), MalformedPathError);      // bad char
  CHECK_THROWS_AS(load_path_text(map, "E"), MalformedPathError);       // stops short
  CHECK_THROWS_AS(load_path_text(map, "EEE"), MalformedPathError);     // overshoots
  CHECK_THROWS_AS(load_path_text(map, "EE\nNN"), MalformedPathError);  // extra line

  const InitialPath ok = load_path_text(map, "EE\n");
  CHECK(ok.actions.size() == 2);
  CHECK_FALSE(ok.uses_all_actions);

  const InitialPath wiggly = load_path_text(map, "EWEE");
  CHECK(wiggly.actions.size() == 4);
  CHECK_FALSE(wiggly.uses_all_actions);
}
