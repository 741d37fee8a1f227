#include "core/model.hpp"

#include <stdexcept>

namespace simex {

double Prediction::probability_of(StateId s) const {
  for (const auto& [next, p] : next_state_probs)
    if (next == s) return p;
  return 0.0;
}

Prediction ObservationModel::predict(StateId s, ActionId a) const {
  const auto it = counts_.find({s, a});
  if (it == counts_.end()) return {};

  long total = 0;
  for (const auto& [next, count] : it->second) total += count;

  Prediction out;
  out.reward = last_reward_.at({s, a});
  out.next_state_probs.reserve(it->second.size());
  for (const auto& [next, count] : it->second)
    out.next_state_probs.emplace_back(next, static_cast<double>(count) / total);
  return out;
}

void ObservationModel::learn(StateId s, ActionId a, double reward, StateId next) {
  ++counts_[{s, a}][next];
  last_reward_[{s, a}] = reward;
  predecessors_[next].insert({s, a});
}

std::set<StateAction> ObservationModel::parents_of(StateId s) const {
  const auto it = predecessors_.find(s);
  return it == predecessors_.end() ? std::set<StateAction>{} : it->second;
}

RecentEffectModel::RecentEffectModel(int action_count, StateId terminal_state,
                                     double initial_reward)
    : increments_(static_cast<std::size_t>(action_count)),
      terminal_(terminal_state),
      initial_reward_(initial_reward) {
  if (action_count <= 0) throw std::invalid_argument("action_count must be positive");
}

Prediction RecentEffectModel::predict(StateId s, ActionId a) const {
  const auto inc = increment(a);
  if (!inc) return {};
  return {{{s + *inc, 1.0}}, initial_reward_};
}

void RecentEffectModel::learn(StateId s, ActionId a, double /*reward*/, StateId next) {
  if (next == terminal_) return;
  const StateId inc = next - s;
  if (inc != 0) increments_[static_cast<std::size_t>(a)] = inc;
}

std::set<StateAction> RecentEffectModel::parents_of(StateId s) const {
  std::set<StateAction> out;
  for (std::size_t a = 0; a < increments_.size(); ++a)
    if (increments_[a]) out.insert({s - *increments_[a], static_cast<ActionId>(a)});
  return out;
}

std::optional<StateId> RecentEffectModel::increment(ActionId a) const {
  if (a < 0 || static_cast<std::size_t>(a) >= increments_.size()) return std::nullopt;
  return increments_[static_cast<std::size_t>(a)];
}

bool is_possible_transition(StateId parent, StateId child, ActionId a,
                            std::span<const Model* const> more_accurate) {
  for (const Model* model : more_accurate) {
    const Prediction pred = model->predict(parent, a);
    if (!pred.empty()) return pred.probability_of(child) > 0.0;
  }
  return true;
}

CombinedModel::CombinedModel(std::vector<std::unique_ptr<Model>> models)
    : models_(std::move(models)) {
  if (models_.empty()) throw std::invalid_argument("combined model needs at least one model");
}

Prediction CombinedModel::predict(StateId s, ActionId a) const {
  for (const auto& model : models_) {
    Prediction pred = model->predict(s, a);
    if (!pred.empty()) return pred;
  }
  return {};
}

void CombinedModel::learn(StateId s, ActionId a, double reward, StateId next) {
  for (const auto& model : models_) model->learn(s, a, reward, next);
}

std::set<StateAction> CombinedModel::parents_of(StateId s) const {
  std::vector<const Model*> raw;
  raw.reserve(models_.size());
  for (const auto& model : models_) raw.push_back(model.get());

  // Least accurate model proposes first; every candidate must survive the
  // models that are more accurate than its proposer. Parents are derived
  // from current model state on every call, so corrections to a more
  // accurate model immediately retire stale candidates.
  std::set<StateAction> parents;
  for (std::size_t i = models_.size(); i-- > 0;) {
    for (const StateAction& cand : raw[i]->parents_of(s)) {
      const std::span<const Model* const> prefix(raw.data(), i);
      if (is_possible_transition(cand.s, s, cand.a, prefix)) parents.insert(cand);
    }
  }
  return parents;
}

CombinedModel make_default_model(int action_count, StateId terminal_state) {
  std::vector<std::unique_ptr<Model>> models;
  models.push_back(std::make_unique<ObservationModel>());
  models.push_back(std::make_unique<RecentEffectModel>(action_count, terminal_state));
  return CombinedModel(std::move(models));
}

}  // namespace simex
