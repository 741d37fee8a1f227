#include "core/experiment.hpp"

#include <sstream>
#include <stdexcept>

namespace simex {

void validate(const ExperimentConfig& cfg) {
  validate(LearnerConfig{cfg.gamma, kActionCount, 0});
  if (cfg.convergence_repeats < 1)
    throw std::invalid_argument("convergence_repeats must be at least 1");
  if (cfg.episode_budget < 1) throw std::invalid_argument("episode budget must be at least 1");
  for (const auto& strategy : cfg.strategies) {
    if (strategy.trajectory_depth < 1 || strategy.trajectories_per_step < 1)
      throw std::invalid_argument("trajectory settings must be at least 1");
    if (strategy.sweep_updates_per_step < 1)
      throw std::invalid_argument("sweep updates per step must be at least 1");
    if (!(strategy.min_priority > 0.0))
      throw std::invalid_argument("min priority must be positive");
  }
}

std::vector<StrategyConfig> default_strategies() {
  return {optimistic_init_strategy(), trajectory_sampling_strategy(3),
          trajectory_sampling_strategy(6), trajectory_sampling_strategy(12),
          unexplored_sweeping_strategy()};
}

bool detect_convergence(const std::vector<long>& history, long optimal, int repeats) {
  if (static_cast<int>(history.size()) < repeats) return false;
  for (int i = 0; i < repeats; ++i)
    if (history[history.size() - 1 - static_cast<std::size_t>(i)] != optimal) return false;
  return true;
}

StrategyRunResult run_strategy(const GridMap& map, const InitialPath& path,
                               const StrategyConfig& strategy, const ExperimentConfig& cfg,
                               std::uint64_t rng_seed, const StepObserver& observer) {
  StrategyRunResult out;
  out.strategy = strategy;
  out.agent = std::make_unique<Agent>(
      strategy, LearnerConfig{cfg.gamma, kActionCount, map.terminal_state()},
      make_default_model(kActionCount, map.terminal_state()), rng_seed);
  Agent& agent = *out.agent;

  RunMetrics live;
  const auto watch = [&](const StepEvent& e) {
    out.visited_states.insert(e.s);
    if (!e.terminal) out.visited_states.insert(e.next);
    out.executed_pairs.insert({e.s, e.a});
    if (e.forced)
      ++live.forced_steps;
    else
      ++live.exploration_steps;
    if (observer) observer(e);
  };

  run_forced_path(agent, map, path, watch);

  const long optimal = shortest_path_length(map);
  const long cap = default_step_cap(map);
  std::vector<RunMetrics> snapshots;
  std::vector<long> history;
  std::vector<StateAction> trace;
  for (long episode = 1; episode <= cfg.episode_budget; ++episode) {
    live.episodes = episode - 1;
    live.explored_states = static_cast<long>(out.visited_states.size());
    live.explored_state_actions = static_cast<long>(out.executed_pairs.size());
    live.simulated_backups = agent.simulated_backups();
    snapshots.push_back(live);

    const EpisodeResult result = run_episode(agent, map, cap, watch, &trace);
    history.push_back(result.steps);
    if (detect_convergence(history, optimal, cfg.convergence_repeats)) {
      out.metrics = snapshots[history.size() - static_cast<std::size_t>(cfg.convergence_repeats)];
      out.metrics.converged = true;
      out.converged_episode_length = optimal;
      out.final_episode_trace = trace;
      return out;
    }
  }

  live.episodes = cfg.episode_budget;
  live.explored_states = static_cast<long>(out.visited_states.size());
  live.explored_state_actions = static_cast<long>(out.executed_pairs.size());
  live.simulated_backups = agent.simulated_backups();
  live.converged = false;
  out.metrics = live;
  out.final_episode_trace = trace;
  return out;
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const GridMap map = GridMap::load_file(cfg.maze_file);
  const InitialPath path = load_path_file(map, cfg.path_file);
  const auto strategies = cfg.strategies.empty() ? default_strategies() : cfg.strategies;

  ExperimentOutcome out;
  out.path_uses_all_actions = path.uses_all_actions;
  out.rows.reserve(strategies.size());
  for (std::size_t i = 0; i < strategies.size(); ++i)
    out.rows.push_back(run_strategy(map, path, strategies[i], cfg, cfg.seed + i));
  return out;
}

std::string emit_table(const std::vector<TableRow>& rows, TableFormat format) {
  const char sep = format == TableFormat::kTsv ? '\t' : ',';
  std::ostringstream out;
  out << "strategy" << sep << "steps" << sep << "forced_steps" << sep << "exploration_steps"
      << sep << "explored_states" << sep << "explored_state_actions" << sep
      << "simulated_backups" << sep << "converged" << '\n';
  for (const auto& row : rows) {
    const RunMetrics& m = row.metrics;
    out << row.strategy << sep << m.total_steps() << sep << m.forced_steps << sep
        << m.exploration_steps << sep << m.explored_states << sep << m.explored_state_actions
        << sep << m.simulated_backups << sep << (m.converged ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string emit_table(const std::vector<StrategyRunResult>& rows, TableFormat format) {
  std::vector<TableRow> simple;
  simple.reserve(rows.size());
  for (const auto& row : rows) simple.push_back({row.strategy.name(), row.metrics});
  return emit_table(simple, format);
}

}  // namespace simex
