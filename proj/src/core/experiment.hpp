#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "core/agent.hpp"

namespace simex {

/// Counters for one strategy run. Explored states and state-actions count
/// real environment interactions only; simulated backups never touch them.
struct RunMetrics {
  long forced_steps = 0;
  long exploration_steps = 0;
  long episodes = 0;
  long explored_states = 0;
  long explored_state_actions = 0;
  long long simulated_backups = 0;
  bool converged = false;

  long total_steps() const { return forced_steps + exploration_steps; }
};

enum class TableFormat { kTsv, kCsv };

struct ExperimentConfig {
  std::string maze_file;
  std::string path_file;
  std::vector<StrategyConfig> strategies;  // empty selects the default five
  double gamma = 0.95;
  std::uint64_t seed = 42;
  int convergence_repeats = 2;
  long episode_budget = 1000;
  TableFormat format = TableFormat::kTsv;
};

void validate(const ExperimentConfig& cfg);

/// The five compared strategies: optimistic initial values, trajectory
/// sampling at depths 3, 6 and 12, and sweeping of unexplored states.
std::vector<StrategyConfig> default_strategies();

/// True when the last `repeats` episode lengths all equal the optimum.
bool detect_convergence(const std::vector<long>& history, long optimal, int repeats);

struct StrategyRunResult {
  StrategyConfig strategy;
  RunMetrics metrics;
  long converged_episode_length = -1;  // -1 when the run never converged
  std::vector<StateAction> final_episode_trace;
  std::set<StateId> visited_states;        // whole run, not frozen
  std::set<StateAction> executed_pairs;    // whole run, not frozen
  std::unique_ptr<Agent> agent;            // final learner state
};

/// Replays the initial path, then runs episodes until the greedy policy
/// repeats the optimal length `convergence_repeats` times or the episode
/// budget runs out. Metrics are frozen at the start of the first episode of
/// the converged streak.
StrategyRunResult run_strategy(const GridMap& map, const InitialPath& path,
                               const StrategyConfig& strategy, const ExperimentConfig& cfg,
                               std::uint64_t rng_seed, const StepObserver& observer = {});

struct ExperimentOutcome {
  std::vector<StrategyRunResult> rows;
  bool path_uses_all_actions = true;
};

/// Loads the maze and path files and runs every configured strategy with
/// rng seeds derived as seed + strategy index. Deterministic for a fixed
/// config.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

struct TableRow {
  std::string strategy;
  RunMetrics metrics;
};

/// Header line plus one line per strategy. Plain integers, no separators.
std::string emit_table(const std::vector<TableRow>& rows, TableFormat format);
std::string emit_table(const std::vector<StrategyRunResult>& rows, TableFormat format);

}  // namespace simex
