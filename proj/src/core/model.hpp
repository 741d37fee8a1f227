#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "core/types.hpp"

namespace simex {

/// Next-state distribution and reward for one (state, action). An empty
/// distribution means the model knows nothing about the pair.
struct Prediction {
  std::vector<std::pair<StateId, double>> next_state_probs;
  double reward = 0.0;

  bool empty() const { return next_state_probs.empty(); }
  double probability_of(StateId s) const;
};

class Model {
 public:
  virtual ~Model() = default;

  virtual Prediction predict(StateId s, ActionId a) const = 0;
  virtual void learn(StateId s, ActionId a, double reward, StateId next) = 0;

  /// Candidate (parent, action) pairs the model predicts may lead to s.
  virtual std::set<StateAction> parents_of(StateId s) const = 0;
};

/// Frequency counts of really observed transitions. Most accurate model in
/// the chain; silent about pairs that were never executed.
class ObservationModel : public Model {
 public:
  Prediction predict(StateId s, ActionId a) const override;
  void learn(StateId s, ActionId a, double reward, StateId next) override;
  std::set<StateAction> parents_of(StateId s) const override;

  bool knows(StateId s, ActionId a) const { return counts_.contains({s, a}); }

 private:
  std::map<StateAction, std::map<StateId, long>> counts_;
  std::map<StateAction, double> last_reward_;
  std::map<StateId, std::set<StateAction>> predecessors_;
};

/// Remembers the last seen state-id increment of each action and replays it
/// anywhere, without clamping to the real grid. Wall bumps (zero increment)
/// and terminal entries are never learned, which keeps the model optimistic
/// about unexplored states.
class RecentEffectModel : public Model {
 public:
  RecentEffectModel(int action_count, StateId terminal_state, double initial_reward = 0.0);

  Prediction predict(StateId s, ActionId a) const override;
  void learn(StateId s, ActionId a, double reward, StateId next) override;
  std::set<StateAction> parents_of(StateId s) const override;

  std::optional<StateId> increment(ActionId a) const;

 private:
  std::vector<std::optional<StateId>> increments_;
  StateId terminal_;
  double initial_reward_;
};

/// True when no model in the accuracy-ordered prefix contradicts the
/// transition parent --a--> child; the first model with an opinion decides.
bool is_possible_transition(StateId parent, StateId child, ActionId a,
                            std::span<const Model* const> more_accurate);

/// Accuracy-ordered fallback chain. Predictions come from the most accurate
/// model that has one; parent candidates are proposed by the less accurate
/// models first and pruned by the more accurate ones.
class CombinedModel : public Model {
 public:
  explicit CombinedModel(std::vector<std::unique_ptr<Model>> models);

  Prediction predict(StateId s, ActionId a) const override;
  void learn(StateId s, ActionId a, double reward, StateId next) override;
  std::set<StateAction> parents_of(StateId s) const override;

  std::size_t model_count() const { return models_.size(); }
  Model& model(std::size_t i) { return *models_[i]; }
  const Model& model(std::size_t i) const { return *models_[i]; }
  const Model& most_accurate() const { return *models_.front(); }

 private:
  std::vector<std::unique_ptr<Model>> models_;
};

/// Observation model backed by a recent-effect model, the stack used by all
/// experiments here.
CombinedModel make_default_model(int action_count, StateId terminal_state);

}  // namespace simex
