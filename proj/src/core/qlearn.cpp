#include "core/qlearn.hpp"

#include <cmath>
#include <stdexcept>

namespace simex {

void validate(const LearnerConfig& cfg) {
  if (!(cfg.gamma > 0.0) || !(cfg.gamma < 1.0))
    throw std::invalid_argument("gamma must be strictly inside (0,1)");
  if (cfg.action_count <= 0) throw std::invalid_argument("action_count must be positive");
}

double state_value(const QTable& q, const LearnerConfig& cfg, StateId s) {
  if (cfg.is_terminal(s)) return 0.0;
  double best = q.read(s, 0);
  for (ActionId a = 1; a < cfg.action_count; ++a) best = std::max(best, q.read(s, a));
  return best;
}

BackupResult estimate_q(QTable& q, const Model& model, const LearnerConfig& cfg, StateId s,
                        ActionId a) {
  const Prediction pred = model.predict(s, a);
  const double old_value = q.read(s, a);
  if (pred.empty()) return {old_value, 0.0};

  double value = 0.0;
  for (const auto& [next, p] : pred.next_state_probs)
    value += p * (pred.reward + cfg.gamma * state_value(q, cfg, next));
  q.write(s, a, value);
  return {value, std::abs(value - old_value)};
}

std::vector<ActionId> greedy_candidates(const QTable& q, const LearnerConfig& cfg, StateId s) {
  std::vector<ActionId> best;
  double best_value = 0.0;
  for (ActionId a = 0; a < cfg.action_count; ++a) {
    const double v = q.read(s, a);
    if (best.empty() || v > best_value) {
      best.assign(1, a);
      best_value = v;
    } else if (v == best_value) {
      best.push_back(a);
    }
  }
  return best;
}

ActionId select_greedy(const QTable& q, const LearnerConfig& cfg, StateId s, Rng& rng) {
  const auto candidates = greedy_candidates(q, cfg, s);
  if (candidates.size() == 1) return candidates.front();
  return candidates[static_cast<std::size_t>(rand_below(rng, candidates.size()))];
}

}  // namespace simex
