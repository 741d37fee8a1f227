#include "core/planner.hpp"

namespace simex {

namespace {

StateId sample_next(const Prediction& pred, Rng& rng) {
  if (pred.next_state_probs.size() == 1) return pred.next_state_probs.front().first;
  const double u = rand_unit(rng);
  double acc = 0.0;
  for (const auto& [next, p] : pred.next_state_probs) {
    acc += p;
    if (u < acc) return next;
  }
  return pred.next_state_probs.back().first;
}

}  // namespace

long plan_along_trajectory(QTable& q, const Model& model, const LearnerConfig& cfg,
                           const TrajectoryConfig& tcfg, StateId s0, Rng& rng) {
  std::vector<StateAction> path;
  StateId s = s0;
  while (static_cast<int>(path.size()) < tcfg.max_depth) {
    if (cfg.is_terminal(s)) break;
    const ActionId a = static_cast<ActionId>(rand_below(rng, cfg.action_count));
    const Prediction pred = model.predict(s, a);
    if (pred.empty()) break;
    const StateId next = sample_next(pred, rng);
    if (next == s) break;
    path.push_back({s, a});
    s = next;
  }

  for (auto it = path.rbegin(); it != path.rend(); ++it)
    estimate_q(q, model, cfg, it->s, it->a);
  return static_cast<long>(path.size());
}

long run_trajectory_batch(QTable& q, const Model& model, const LearnerConfig& cfg,
                          const TrajectoryConfig& tcfg, StateId s0, Rng& rng) {
  long backups = 0;
  for (int i = 0; i < tcfg.trajectories_per_step; ++i)
    backups += plan_along_trajectory(q, model, cfg, tcfg, s0, rng);
  return backups;
}

bool SweepQueue::push(StateAction target, double priority) {
  if (priority < min_priority_) return false;
  auto [it, inserted] = live_.try_emplace(target, priority);
  if (!inserted) {
    if (it->second >= priority) return false;
    it->second = priority;  // escalate; the old heap entry goes stale
  }
  heap_.push({priority, next_seq_++, target});
  return true;
}

std::optional<SweepQueue::Popped> SweepQueue::pop_best() {
  while (!heap_.empty()) {
    const HeapEntry top = heap_.top();
    heap_.pop();
    const auto it = live_.find(top.target);
    if (it == live_.end() || it->second != top.priority) continue;  // stale
    live_.erase(it);
    return Popped{top.target, top.priority};
  }
  return std::nullopt;
}

std::optional<double> SweepQueue::priority_of(StateAction target) const {
  const auto it = live_.find(target);
  if (it == live_.end()) return std::nullopt;
  return it->second;
}

void PrioritySweeper::enqueue_parents(const CombinedModel& model, StateId s, double delta) {
  if (delta < queue_.min_priority()) return;
  const std::set<StateAction> parents = mode_ == SweepMode::kExploredOnly
                                            ? model.most_accurate().parents_of(s)
                                            : model.parents_of(s);
  for (const StateAction& parent : parents) queue_.push(parent, delta);
}

long PrioritySweeper::sweep(QTable& q, const CombinedModel& model, const LearnerConfig& cfg) {
  long done = 0;
  while (done < max_updates_per_step_) {
    const auto popped = queue_.pop_best();
    if (!popped) break;
    const BackupResult result = estimate_q(q, model, cfg, popped->target.s, popped->target.a);
    ++done;
    enqueue_parents(model, popped->target.s, result.delta);
  }
  return done;
}

}  // namespace simex
