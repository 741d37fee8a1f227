#pragma once

#include <optional>
#include <queue>
#include <unordered_map>

#include "core/qlearn.hpp"

namespace simex {

struct TrajectoryConfig {
  int max_depth = 6;
  int trajectories_per_step = 10;
};

/// Samples one trajectory through the model from s0 with a uniformly random
/// simulated policy, then backs up the recorded pairs in reverse order.
/// Stops at terminal states, missing predictions, predicted self-loops, or
/// max_depth pairs. Touches only the model, never the environment. Returns
/// the number of backups performed.
long plan_along_trajectory(QTable& q, const Model& model, const LearnerConfig& cfg,
                           const TrajectoryConfig& tcfg, StateId s0, Rng& rng);

/// trajectories_per_step independent trajectories from s0.
long run_trajectory_batch(QTable& q, const Model& model, const LearnerConfig& cfg,
                          const TrajectoryConfig& tcfg, StateId s0, Rng& rng);

enum class SweepMode {
  kExploredOnly,       // parents come from really observed predecessors
  kIncludeUnexplored,  // parents come from the combined model, visited or not
};

/// Max-priority queue of pending backups. At most one live entry per
/// state-action; re-insertion escalates to the larger priority; entries
/// below the minimal priority are discarded rather than stored.
class SweepQueue {
 public:
  explicit SweepQueue(double min_priority) : min_priority_(min_priority) {}

  bool push(StateAction target, double priority);

  struct Popped {
    StateAction target;
    double priority = 0.0;
  };
  std::optional<Popped> pop_best();

  std::size_t size() const { return live_.size(); }
  bool empty() const { return live_.empty(); }
  bool contains(StateAction target) const { return live_.contains(target); }
  std::optional<double> priority_of(StateAction target) const;
  double min_priority() const { return min_priority_; }

 private:
  struct HeapEntry {
    double priority = 0.0;
    std::uint64_t seq = 0;
    StateAction target;
  };
  struct HeapOrder {
    bool operator()(const HeapEntry& lhs, const HeapEntry& rhs) const {
      if (lhs.priority != rhs.priority) return lhs.priority < rhs.priority;
      return lhs.seq > rhs.seq;  // FIFO among equal priorities
    }
  };

  double min_priority_;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap_;
  std::unordered_map<StateAction, double, StateActionHash> live_;
};

/// Prioritized sweeping: the magnitude of a value change schedules backups
/// of the changed state's parents, bounded per planning step.
class PrioritySweeper {
 public:
  PrioritySweeper(SweepMode mode, double min_priority, int max_updates_per_step)
      : mode_(mode), max_updates_per_step_(max_updates_per_step), queue_(min_priority) {}

  /// Schedules the parents of s with priority delta. No-op below the queue
  /// threshold. In kExploredOnly mode only the most accurate model's
  /// recorded predecessors qualify.
  void enqueue_parents(const CombinedModel& model, StateId s, double delta);

  /// Pops and backs up the highest-priority targets, re-scheduling their
  /// parents, until the per-step budget or the queue is exhausted. Returns
  /// the number of backups performed.
  long sweep(QTable& q, const CombinedModel& model, const LearnerConfig& cfg);

  SweepMode mode() const { return mode_; }
  int max_updates_per_step() const { return max_updates_per_step_; }
  const SweepQueue& queue() const { return queue_; }
  SweepQueue& queue() { return queue_; }

 private:
  SweepMode mode_;
  int max_updates_per_step_;
  SweepQueue queue_;
};

}  // namespace simex
