#include <doctest.h>

#include <map>
#include <memory>

#include "core/agent.hpp"
#include "core/errors.hpp"
#include "oracle.hpp"

using namespace simex;

namespace {

const std::string kSmallMaze = std::string(SIMEX_DATA_DIR) + "/maze_small.txt";
const std::string kSmallPath = std::string(SIMEX_DATA_DIR) + "/path_small.txt";
const std::string kMainMaze = std::string(SIMEX_DATA_DIR) + "/maze_main.txt";
const std::string kMainPath = std::string(SIMEX_DATA_DIR) + "/path_main.txt";

Agent agent_for(const GridMap& map, const StrategyConfig& strategy, std::uint64_t seed = 1,
                double gamma = 0.95) {
  return make_agent(strategy, map, gamma, seed);
}

// Delegating model that counts how often its predictions are consulted.
class CountingModel : public Model {
 public:
  explicit CountingModel(std::unique_ptr<Model> inner) : inner_(std::move(inner)) {}

  Prediction predict(StateId s, ActionId a) const override {
    ++predict_calls;
    return inner_->predict(s, a);
  }
  void learn(StateId s, ActionId a, double reward, StateId next) override {
    inner_->learn(s, a, reward, next);
  }
  std::set<StateAction> parents_of(StateId s) const override {
    ++parent_calls;
    return inner_->parents_of(s);
  }

  mutable long predict_calls = 0;
  mutable long parent_calls = 0;

 private:
  std::unique_ptr<Model> inner_;
};

}  // namespace

TEST_CASE("the reward must be present exactly when an action is pending") {
  const GridMap map = GridMap::load_text("S.G");
  Agent agent = agent_for(map, optimistic_init_strategy());
  CHECK_THROWS_AS(agent.step(0, 0.5), ProtocolViolationError);

  const auto a = agent.step(0, std::nullopt);
  REQUIRE(a.has_value());
  CHECK_THROWS_AS(agent.step(1, std::nullopt), ProtocolViolationError);
}

TEST_CASE("a fresh optimistic agent starts from a full tie at 1.0") {
  const GridMap map = GridMap::load_text("S.G");
  Agent agent = agent_for(map, optimistic_init_strategy());
  for (ActionId a = 0; a < kActionCount; ++a) CHECK(agent.q().read(0, a) == 1.0);
  const auto action = agent.step(0, std::nullopt);
  REQUIRE(action.has_value());
  CHECK(*action >= 0);
  CHECK(*action < kActionCount);
}

TEST_CASE("reaching the terminal state ends the episode with a full-reward backup") {
  const GridMap map = GridMap::load_text("S.G");
  Agent agent = agent_for(map, optimistic_init_strategy());
  agent.step_forced(0, std::nullopt, kEast);
  agent.step_forced(1, 0.0, kEast);
  const auto none = agent.step(map.terminal_state(), 1.0);
  CHECK_FALSE(none.has_value());
  CHECK(agent.q().read(1, kEast) == 1.0);
}

TEST_CASE("a trajectory-sampling agent with fresh models plans zero backups") {
  const GridMap map = GridMap::load_text("S.G");
  Agent agent = agent_for(map, trajectory_sampling_strategy(6));
  const auto action = agent.step(0, std::nullopt);
  REQUIRE(action.has_value());
  CHECK(agent.simulated_backups() == 0);
}

TEST_CASE("forced replay teaches both models the whole path") {
  const GridMap map = GridMap::load_text("S.G");
  Agent agent = agent_for(map, unexplored_sweeping_strategy());
  const InitialPath path = load_path_text(map, "EE");
  const long steps = run_forced_path(agent, map, path);
  CHECK(steps == 2);

  auto& obs = dynamic_cast<ObservationModel&>(agent.model().model(0));
  CHECK(obs.predict(0, kEast).next_state_probs[0].first == 1);
  CHECK(obs.predict(0, kEast).reward == 0.0);
  CHECK(obs.predict(1, kEast).next_state_probs[0].first == map.terminal_state());
  CHECK(obs.predict(1, kEast).reward == 1.0);

  auto& effect = dynamic_cast<RecentEffectModel&>(agent.model().model(1));
  CHECK(effect.increment(kEast) == 1);
  CHECK_FALSE(effect.increment(kNorth).has_value());
}

TEST_CASE("forced replay takes exactly the path-file steps on the main maze") {
  const GridMap map = GridMap::load_file(kMainMaze);
  const InitialPath path = load_path_file(map, kMainPath);
  Agent agent = agent_for(map, optimistic_init_strategy());
  long observed = 0;
  const long steps = run_forced_path(agent, map, path, [&](const StepEvent& e) {
    CHECK(e.forced);
    ++observed;
  });
  CHECK(steps == static_cast<long>(path.actions.size()));
  CHECK(observed == steps);
}

TEST_CASE("after replay and a drained queue the start state has value") {
  const GridMap map = GridMap::load_file(kSmallMaze);
  const InitialPath path = load_path_file(map, kSmallPath);
  Agent agent = agent_for(map, unexplored_sweeping_strategy());
  run_forced_path(agent, map, path);
  for (int i = 0; i < 100000 && !agent.sweeper().queue().empty(); ++i)
    agent.sweeper().sweep(agent.q(), agent.model(), agent.learner());
  CHECK(agent.sweeper().queue().empty());
  CHECK(state_value(agent.q(), agent.learner(), map.start_state()) > 0.0);
}

TEST_CASE("a converged agent walks the short corridor in two steps") {
  const GridMap map = GridMap::load_text("S.G");
  Agent agent = agent_for(map, trajectory_sampling_strategy(3));
  run_forced_path(agent, map, load_path_text(map, "EE"));
  const EpisodeResult result = run_episode(agent, map, default_step_cap(map));
  CHECK(result.steps == 2);
  CHECK(result.reached_goal);
}

TEST_CASE("the step cap stops a wall-hugging episode") {
  const GridMap map = GridMap::load_text("S.G");
  Agent agent = agent_for(map, trajectory_sampling_strategy(3));
  agent.q().write(0, kWest, 1.0);  // the wall stays more attractive than 1e-32
  const EpisodeResult result = run_episode(agent, map, default_step_cap(map));
  CHECK(result.steps == default_step_cap(map));
  CHECK_FALSE(result.reached_goal);
  CHECK_NOTHROW(run_episode(agent, map, 5));  // the protocol resets cleanly
}

TEST_CASE("episodes with the same seed produce identical traces") {
  const GridMap map = GridMap::load_file(kSmallMaze);
  const InitialPath path = load_path_file(map, kSmallPath);
  std::vector<StateAction> traces[2];
  for (int run = 0; run < 2; ++run) {
    Agent agent = agent_for(map, unexplored_sweeping_strategy(), 11);
    run_forced_path(agent, map, path);
    std::vector<StateAction> trace;
    run_episode(agent, map, default_step_cap(map), {}, &trace);
    traces[run] = trace;
  }
  CHECK(traces[0] == traces[1]);
}

TEST_CASE("planning never touches the environment") {
  const GridMap map = GridMap::load_file(kSmallMaze);
  const InitialPath path = load_path_file(map, kSmallPath);
  Agent agent = agent_for(map, trajectory_sampling_strategy(12));
  run_forced_path(agent, map, path);
  long interactions = 0;
  const EpisodeResult result =
      run_episode(agent, map, default_step_cap(map), [&](const StepEvent&) { ++interactions; });
  CHECK(interactions == result.steps);  // one real step per loop turn, nothing more
}

TEST_CASE("the optimistic strategy never consults the effect model's predictions") {
  const GridMap map = GridMap::load_file(kSmallMaze);
  const InitialPath path = load_path_file(map, kSmallPath);

  std::vector<std::unique_ptr<Model>> models;
  models.push_back(std::make_unique<ObservationModel>());
  auto counting =
      std::make_unique<CountingModel>(std::make_unique<RecentEffectModel>(kActionCount, map.terminal_state()));
  CountingModel* counter = counting.get();
  models.push_back(std::move(counting));

  Agent agent(optimistic_init_strategy(), LearnerConfig{0.95, kActionCount, map.terminal_state()},
              CombinedModel(std::move(models)), 3);
  run_forced_path(agent, map, path);
  for (int episode = 0; episode < 30; ++episode) run_episode(agent, map, default_step_cap(map));
  CHECK(counter->predict_calls == 0);
  CHECK(counter->parent_calls == 0);
}

TEST_CASE("optimistic initial values alone find the optimal path") {
  const GridMap map = GridMap::load_file(kSmallMaze);
  const InitialPath path = load_path_file(map, kSmallPath);
  const long optimal = shortest_path_length(map);
  Agent agent = agent_for(map, optimistic_init_strategy(), 5);
  run_forced_path(agent, map, path);

  long streak = 0;
  for (int episode = 0; episode < 300 && streak < 2; ++episode) {
    const EpisodeResult result = run_episode(agent, map, default_step_cap(map));
    streak = result.steps == optimal ? streak + 1 : 0;
  }
  CHECK(streak == 2);
}

TEST_CASE("before convergence the agent keeps making progress") {
  // Over any window of 10 * |states| real steps the agent either executes a
  // new state-action or strictly decreases some entry.
  const GridMap map = GridMap::load_file(kSmallMaze);
  const InitialPath path = load_path_file(map, kSmallPath);
  const long optimal = shortest_path_length(map);
  const long window = 10 * map.free_cell_count();

  Agent agent = agent_for(map, unexplored_sweeping_strategy(), 17);
  run_forced_path(agent, map, path);

  std::set<StateAction> seen;
  long steps_since_progress = 0;
  long worst_gap = 0;
  long streak = 0;
  for (int episode = 0; episode < 300 && streak < 2; ++episode) {
    agent.begin_episode();
    StateId s = map.start_state();
    std::optional<double> reward;
    long steps = 0;
    while (true) {
      const std::map<StateAction, double> before(agent.q().entries().begin(),
                                                 agent.q().entries().end());
      const auto a = agent.step(s, reward);
      if (!a) break;
      const StepResult res = step(map, s, *a);
      ++steps;

      bool progress = seen.insert({s, *a}).second;
      for (const auto& [key, value] : before)
        progress = progress || agent.q().read(key.s, key.a) < value;
      steps_since_progress = progress ? 0 : steps_since_progress + 1;
      worst_gap = std::max(worst_gap, steps_since_progress);

      s = res.next;
      reward = res.reward;
      if (res.terminal) {
        agent.step(s, reward);
        break;
      }
      if (steps > default_step_cap(map)) break;
    }
    streak = steps == optimal ? streak + 1 : 0;
  }
  REQUIRE(streak == 2);
  CHECK(worst_gap < window);
}
