#pragma once

#include <functional>
#include <optional>
#include <string>

#include "core/grid.hpp"
#include "core/planner.hpp"

namespace simex {

enum class StrategyKind {
  kOptimisticInit,      // optimistic initial values, sweeping of explored states
  kTrajectorySampling,  // simulated trajectories from the current state
  kUnexploredSweeping,  // prioritized sweeping that reaches unexplored states
};

struct StrategyConfig {
  StrategyKind kind = StrategyKind::kOptimisticInit;
  int trajectory_depth = 6;
  int trajectories_per_step = 10;
  double min_priority = 1e-6;
  int sweep_updates_per_step = 500;

  double initial_q() const {
    return kind == StrategyKind::kOptimisticInit ? kOptimisticInitialQ : kLowInitialQ;
  }
  SweepMode sweep_mode() const {
    return kind == StrategyKind::kUnexploredSweeping ? SweepMode::kIncludeUnexplored
                                                     : SweepMode::kExploredOnly;
  }
  std::string name() const;
};

StrategyConfig optimistic_init_strategy();
StrategyConfig trajectory_sampling_strategy(int max_depth);
StrategyConfig unexplored_sweeping_strategy();

/// One step of the agent loop: learn from the last real transition, plan by
/// simulated exploration, act greedily. Returns no action at the terminal
/// state, which ends the episode.
class Agent {
 public:
  Agent(StrategyConfig strategy, LearnerConfig learner, CombinedModel model,
        std::uint64_t rng_seed);

  std::optional<ActionId> step(StateId s, std::optional<double> reward);

  /// Same learning and planning as step, but the returned action is the
  /// given one instead of the greedy choice. Used to replay the initial
  /// suboptimal path.
  std::optional<ActionId> step_forced(StateId s, std::optional<double> reward, ActionId forced);

  void begin_episode() { last_.reset(); }

  long long simulated_backups() const { return simulated_backups_; }
  const StrategyConfig& strategy() const { return strategy_; }
  const LearnerConfig& learner() const { return learner_; }
  QTable& q() { return q_; }
  const QTable& q() const { return q_; }
  CombinedModel& model() { return model_; }
  const CombinedModel& model() const { return model_; }
  PrioritySweeper& sweeper() { return sweeper_; }
  const PrioritySweeper& sweeper() const { return sweeper_; }
  Rng& rng() { return rng_; }

 private:
  void learn_from(StateId s, double reward);
  void plan(StateId s);

  StrategyConfig strategy_;
  LearnerConfig learner_;
  CombinedModel model_;
  QTable q_;
  PrioritySweeper sweeper_;
  TrajectoryConfig trajectory_;
  Rng rng_;
  std::optional<StateAction> last_;
  long long simulated_backups_ = 0;
};

/// Agent with the default model stack for the given map.
Agent make_agent(const StrategyConfig& strategy, const GridMap& map, double gamma,
                 std::uint64_t rng_seed);

struct StepEvent {
  StateId s = 0;
  ActionId a = 0;
  StateId next = 0;
  double reward = 0.0;
  bool terminal = false;
  bool forced = false;
};
using StepObserver = std::function<void(const StepEvent&)>;

/// Replays the initial path with learning and planning enabled, overriding
/// action selection. Returns the number of real steps taken.
long run_forced_path(Agent& agent, const GridMap& map, const InitialPath& path,
                     const StepObserver& observer = {});

struct EpisodeResult {
  long steps = 0;
  bool reached_goal = false;
};

long default_step_cap(const GridMap& map);

/// One episode from the start state until the goal or the step cap.
EpisodeResult run_episode(Agent& agent, const GridMap& map, long step_cap,
                          const StepObserver& observer = {},
                          std::vector<StateAction>* trace = nullptr);

}  // namespace simex
