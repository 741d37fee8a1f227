#include "core/agent.hpp"

#include "core/errors.hpp"

namespace simex {

std::string StrategyConfig::name() const {
  switch (kind) {
    case StrategyKind::kOptimisticInit:
      return "optimistic-init";
    case StrategyKind::kTrajectorySampling:
      return "trajectory-" + std::to_string(trajectory_depth);
    case StrategyKind::kUnexploredSweeping:
      return "unexplored-sweeping";
  }
  return "?";
}

StrategyConfig optimistic_init_strategy() {
  return {.kind = StrategyKind::kOptimisticInit};
}

StrategyConfig trajectory_sampling_strategy(int max_depth) {
  return {.kind = StrategyKind::kTrajectorySampling, .trajectory_depth = max_depth};
}

StrategyConfig unexplored_sweeping_strategy() {
  return {.kind = StrategyKind::kUnexploredSweeping};
}

Agent::Agent(StrategyConfig strategy, LearnerConfig learner, CombinedModel model,
             std::uint64_t rng_seed)
    : strategy_(strategy),
      learner_(learner),
      model_(std::move(model)),
      q_(strategy.initial_q()),
      sweeper_(strategy.sweep_mode(), strategy.min_priority, strategy.sweep_updates_per_step),
      trajectory_{strategy.trajectory_depth, strategy.trajectories_per_step},
      rng_(rng_seed) {
  validate(learner_);
}

std::optional<ActionId> Agent::step(StateId s, std::optional<double> reward) {
  if (reward.has_value() != last_.has_value())
    throw ProtocolViolationError(reward ? "reward given but no pending action"
                                        : "pending action but no reward given");
  if (reward) learn_from(s, *reward);
  if (learner_.is_terminal(s)) {
    last_.reset();
    return std::nullopt;
  }
  plan(s);
  const ActionId a = select_greedy(q_, learner_, s, rng_);
  last_ = StateAction{s, a};
  return a;
}

std::optional<ActionId> Agent::step_forced(StateId s, std::optional<double> reward,
                                           ActionId forced) {
  if (forced < 0 || forced >= learner_.action_count)
    throw std::invalid_argument("forced action out of range");
  if (reward.has_value() != last_.has_value())
    throw ProtocolViolationError(reward ? "reward given but no pending action"
                                        : "pending action but no reward given");
  if (reward) learn_from(s, *reward);
  if (learner_.is_terminal(s)) {
    last_.reset();
    return std::nullopt;
  }
  plan(s);
  last_ = StateAction{s, forced};
  return forced;
}

void Agent::learn_from(StateId s, double reward) {
  model_.learn(last_->s, last_->a, reward, s);
  const BackupResult result = estimate_q(q_, model_, learner_, last_->s, last_->a);
  sweeper_.enqueue_parents(model_, last_->s, result.delta);
}

void Agent::plan(StateId s) {
  if (strategy_.kind == StrategyKind::kTrajectorySampling)
    simulated_backups_ += run_trajectory_batch(q_, model_, learner_, trajectory_, s, rng_);
  simulated_backups_ += sweeper_.sweep(q_, model_, learner_);
}

Agent make_agent(const StrategyConfig& strategy, const GridMap& map, double gamma,
                 std::uint64_t rng_seed) {
  const LearnerConfig learner{gamma, kActionCount, map.terminal_state()};
  return Agent(strategy, learner, make_default_model(kActionCount, map.terminal_state()),
               rng_seed);
}

long run_forced_path(Agent& agent, const GridMap& map, const InitialPath& path,
                     const StepObserver& observer) {
  agent.begin_episode();
  StateId s = map.start_state();
  std::optional<double> reward;
  long steps = 0;
  for (std::size_t i = 0; i < path.actions.size(); ++i) {
    const ActionId a = path.actions[i];
    agent.step_forced(s, reward, a);
    const StepResult result = step(map, s, a);
    ++steps;
    if (observer) observer({s, a, result.next, result.reward, result.terminal, true});
    s = result.next;
    reward = result.reward;
    if (result.terminal && i + 1 < path.actions.size())
      throw PathDivergedError("path reached the goal before its final action");
  }
  if (!map.is_terminal(s)) throw PathDivergedError("path did not end at the goal");
  agent.step(s, reward);  // learn the goal entry and close the episode
  return steps;
}

long default_step_cap(const GridMap& map) {
  return 10L * map.width() * map.height();
}

EpisodeResult run_episode(Agent& agent, const GridMap& map, long step_cap,
                          const StepObserver& observer, std::vector<StateAction>* trace) {
  agent.begin_episode();
  if (trace) trace->clear();
  StateId s = map.start_state();
  std::optional<double> reward;
  long steps = 0;
  while (true) {
    const std::optional<ActionId> a = agent.step(s, reward);
    if (!a) return {steps, true};
    if (steps >= step_cap) return {steps, false};
    const StepResult result = step(map, s, *a);
    ++steps;
    if (trace) trace->push_back({s, *a});
    if (observer) observer({s, *a, result.next, result.reward, result.terminal, false});
    s = result.next;
    reward = result.reward;
  }
}

}  // namespace simex
