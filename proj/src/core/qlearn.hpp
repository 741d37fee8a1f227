#pragma once

#include <unordered_map>
#include <vector>

#include "core/model.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"

namespace simex {

// Initial state-action values: 1.0 makes every untried pair look like a
// guaranteed reward; 1e-32 is low enough to be no incentive while staying
// strictly positive and decreasable.
inline constexpr double kOptimisticInitialQ = 1.0;
inline constexpr double kLowInitialQ = 1e-32;

struct LearnerConfig {
  double gamma = 0.95;
  int action_count = 4;
  StateId terminal_state = 0;

  bool is_terminal(StateId s) const { return s == terminal_state; }
};

/// Throws std::invalid_argument unless gamma is strictly inside (0,1) and
/// action_count is positive.
void validate(const LearnerConfig& cfg);

/// Sparse state-action value table. Absent entries read as the table-wide
/// default; entries are never enumerated, so the state space may be
/// unbounded.
class QTable {
 public:
  explicit QTable(double default_q) : default_q_(default_q) {}

  double read(StateId s, ActionId a) const {
    const auto it = entries_.find({s, a});
    return it == entries_.end() ? default_q_ : it->second;
  }

  void write(StateId s, ActionId a, double value) { entries_[{s, a}] = value; }

  bool touched(StateId s, ActionId a) const { return entries_.contains({s, a}); }
  std::size_t touched_count() const { return entries_.size(); }
  double default_q() const { return default_q_; }

  const std::unordered_map<StateAction, double, StateActionHash>& entries() const {
    return entries_;
  }

 private:
  double default_q_;
  std::unordered_map<StateAction, double, StateActionHash> entries_;
};

/// 0 for the terminal state, otherwise the best action value at s.
double state_value(const QTable& q, const LearnerConfig& cfg, StateId s);

struct BackupResult {
  double value = 0.0;
  double delta = 0.0;
};

/// Full expected Bellman backup of (s, a) against the model's prediction.
/// When the model has no prediction the table is left untouched and the
/// delta is zero. Predicted states without entries contribute default_q
/// through state_value; that is how simulated exploration raises the value
/// of states never really visited.
BackupResult estimate_q(QTable& q, const Model& model, const LearnerConfig& cfg, StateId s,
                        ActionId a);

/// All actions tied for the best value at s, in action order.
std::vector<ActionId> greedy_candidates(const QTable& q, const LearnerConfig& cfg, StateId s);

/// Greedy action with uniform random tie-breaking.
ActionId select_greedy(const QTable& q, const LearnerConfig& cfg, StateId s, Rng& rng);

}  // namespace simex
