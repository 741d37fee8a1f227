#include <doctest.h>

#include <cmath>
#include <set>

#include "core/grid.hpp"
#include "core/planner.hpp"
#include "oracle.hpp"

using namespace simex;

namespace {

constexpr StateId kTerminal = 1000;

CombinedModel make_combined() { return make_default_model(kActionCount, kTerminal); }

}  // namespace

TEST_CASE("a trajectory into a modeled goal backs the entry pair up to 1.0") {
  // One action only, so the simulated policy always picks the goal entry.
  const LearnerConfig cfg{0.9, 1, kTerminal};
  ObservationModel obs;
  obs.learn(5, 0, 1.0, kTerminal);
  QTable q(kLowInitialQ);
  Rng rng(1);
  const long backups = plan_along_trajectory(q, obs, cfg, {3, 10}, 5, rng);
  CHECK(backups == 1);
  CHECK(q.read(5, 0) == 1.0);
}

TEST_CASE("an empty model yields no simulated backups") {
  const LearnerConfig cfg{0.9, kActionCount, kTerminal};
  CombinedModel model = make_combined();
  QTable q(kLowInitialQ);
  Rng rng(1);
  CHECK(plan_along_trajectory(q, model, cfg, {6, 10}, 5, rng) == 0);
  CHECK(run_trajectory_batch(q, model, cfg, {6, 10}, 5, rng) == 0);
  CHECK(q.entries().empty());
}

TEST_CASE("a predicted self-loop stops the trajectory before the pair is recorded") {
  const LearnerConfig cfg{0.9, 1, kTerminal};
  ObservationModel obs;
  obs.learn(5, 0, 0.0, 5);  // recorded wall bump
  QTable q(kLowInitialQ);
  Rng rng(1);
  CHECK(plan_along_trajectory(q, obs, cfg, {6, 10}, 5, rng) == 0);
  CHECK(q.entries().empty());
}

TEST_CASE("trajectories stay within max_depth of their start") {
  const LearnerConfig cfg{0.9, 1, kTerminal};
  RecentEffectModel effect(1, kTerminal);
  effect.learn(0, 0, 0.0, 1);  // an endless eastward line
  QTable q(kLowInitialQ);
  Rng rng(1);
  const long backups = plan_along_trajectory(q, effect, cfg, {4, 10}, 100, rng);
  CHECK(backups == 4);
  for (const auto& [key, value] : q.entries()) {
    CHECK(key.s >= 100);
    CHECK(key.s < 104);
  }
}

TEST_CASE("a batch performs at most depth times trajectory count backups") {
  const LearnerConfig cfg{0.9, kActionCount, kTerminal};
  CombinedModel model = make_combined();
  for (StateId s = 0; s < 20; ++s)
    for (ActionId a = 0; a < kActionCount; ++a)
      model.learn(s, a, 0.0, (s + a + 1) % 20);
  QTable q(kLowInitialQ);
  Rng rng(9);
  CHECK(run_trajectory_batch(q, model, cfg, {3, 10}, 0, rng) <= 30);
}

TEST_CASE("batches with the same seed are identical") {
  const LearnerConfig cfg{0.9, kActionCount, kTerminal};
  CombinedModel model = make_combined();
  for (StateId s = 0; s < 20; ++s)
    for (ActionId a = 0; a < kActionCount; ++a) model.learn(s, a, 0.0, (s * 3 + a + 1) % 20);

  QTable q1(kLowInitialQ);
  QTable q2(kLowInitialQ);
  Rng rng1(77);
  Rng rng2(77);
  const long b1 = run_trajectory_batch(q1, model, cfg, {6, 10}, 4, rng1);
  const long b2 = run_trajectory_batch(q2, model, cfg, {6, 10}, 4, rng2);
  CHECK(b1 == b2);
  REQUIRE(q1.entries().size() == q2.entries().size());
  for (const auto& [key, value] : q1.entries()) {
    REQUIRE(q2.touched(key.s, key.a));
    CHECK(q2.read(key.s, key.a) == value);
  }
}

TEST_CASE("queue drops sub-threshold entries and escalates duplicates") {
  SweepQueue queue(1e-6);
  CHECK_FALSE(queue.push({5, 0}, 1e-7));
  CHECK(queue.empty());

  CHECK(queue.push({5, 0}, 0.5));
  CHECK_FALSE(queue.push({5, 0}, 0.3));  // lower priority is ignored
  CHECK(queue.priority_of({5, 0}) == 0.5);
  CHECK(queue.push({5, 0}, 0.8));
  CHECK(queue.priority_of({5, 0}) == 0.8);
  CHECK(queue.size() == 1);

  const auto popped = queue.pop_best();
  REQUIRE(popped.has_value());
  CHECK(popped->target == StateAction{5, 0});
  CHECK(popped->priority == 0.8);
  CHECK_FALSE(queue.pop_best().has_value());
}

TEST_CASE("queue pops in priority order and never stores below the threshold") {
  SweepQueue queue(1e-3);
  Rng rng(5);
  std::set<StateAction> accepted;
  for (int i = 0; i < 500; ++i) {
    const StateAction target{static_cast<StateId>(rand_below(rng, 60)),
                             static_cast<ActionId>(rand_below(rng, 4))};
    const double priority = rand_unit(rng);
    if (queue.push(target, priority)) accepted.insert(target);
    else
      CHECK((priority < 1e-3 || (queue.priority_of(target).has_value() &&
                                 *queue.priority_of(target) >= priority)));
  }
  CHECK(queue.size() == accepted.size());

  double last = 2.0;
  std::set<StateAction> popped;
  while (const auto entry = queue.pop_best()) {
    CHECK(entry->priority >= 1e-3);
    CHECK(entry->priority <= last);
    last = entry->priority;
    CHECK(popped.insert(entry->target).second);  // one live entry per pair
  }
  CHECK(popped == accepted);
}

TEST_CASE("parents are scheduled according to the sweep mode") {
  CombinedModel model = make_combined();
  dynamic_cast<RecentEffectModel&>(model.model(1)).learn(0, kEast, 0.0, 1);
  dynamic_cast<RecentEffectModel&>(model.model(1)).learn(1, kWest, 0.0, 0);

  PrioritySweeper explored(SweepMode::kExploredOnly, 1e-6, 20);
  explored.enqueue_parents(model, 10, 0.9);
  CHECK(explored.queue().empty());  // no observed predecessors yet

  PrioritySweeper unexplored(SweepMode::kIncludeUnexplored, 1e-6, 20);
  unexplored.enqueue_parents(model, 10, 0.0);  // below threshold: no-op
  CHECK(unexplored.queue().empty());
  unexplored.enqueue_parents(model, 10, 0.9);
  CHECK(unexplored.queue().size() == 2);
  CHECK(unexplored.queue().contains({9, kEast}));
  CHECK(unexplored.queue().contains({11, kWest}));
}

TEST_CASE("sweeping an empty queue does nothing") {
  const LearnerConfig cfg{0.9, kActionCount, kTerminal};
  CombinedModel model = make_combined();
  QTable q(kLowInitialQ);
  PrioritySweeper sweeper(SweepMode::kExploredOnly, 1e-6, 20);
  CHECK(sweeper.sweep(q, model, cfg) == 0);
}

TEST_CASE("a settled entry costs one backup and leaves the queue empty") {
  const LearnerConfig cfg{0.9, kActionCount, kTerminal};
  CombinedModel model = make_combined();
  model.learn(5, kEast, 0.0, 6);
  QTable q(kLowInitialQ);
  estimate_q(q, model, cfg, 5, kEast);  // settle the value first

  PrioritySweeper sweeper(SweepMode::kExploredOnly, 1e-6, 20);
  sweeper.queue().push({5, kEast}, 1.0);
  CHECK(sweeper.sweep(q, model, cfg) == 1);
  CHECK(sweeper.queue().empty());
}

TEST_CASE("a goal-end change sweeps down the whole chain and matches the oracle") {
  // 1x9 corridor: eight states in a row ahead of the goal cell.
  const GridMap map = GridMap::load_text("S.......G");
  const LearnerConfig cfg{0.9, kActionCount, map.terminal_state()};
  CombinedModel model = make_default_model(kActionCount, map.terminal_state());
  std::vector<std::pair<oracle::QKey, Prediction>> transitions;
  for (StateId s = 0; s < 8; ++s) {
    const StepResult res = step(map, s, kEast);
    model.learn(s, kEast, res.reward, res.next);
    transitions.push_back({{s, kEast}, model.predict(s, kEast)});
  }

  QTable q(kLowInitialQ);
  PrioritySweeper sweeper(SweepMode::kExploredOnly, 1e-6, 20);
  const BackupResult seed = estimate_q(q, model, cfg, 7, kEast);
  CHECK(seed.value == 1.0);
  sweeper.enqueue_parents(model, 7, seed.delta);

  const long backups = sweeper.sweep(q, model, cfg);
  CHECK(backups == 7);  // the change reaches the start in a single sweep
  CHECK(sweeper.queue().empty());

  const oracle::TrueQ truth =
      oracle::value_iteration_model(transitions, map.terminal_state(), cfg.gamma);
  for (const auto& [key, value] : truth.q)
    CHECK(q.read(key.first, key.second) == doctest::Approx(value).epsilon(1e-9));
}

TEST_CASE("sweeping of unexplored states drains with a reward-silent model") {
  const LearnerConfig cfg{0.9, kActionCount, kTerminal};
  CombinedModel model = make_combined();
  model.learn(50, kEast, 0.0, 51);
  model.learn(51, kWest, 0.0, 50);
  model.learn(51, kEast, 1.0, kTerminal);

  QTable q(kLowInitialQ);
  PrioritySweeper sweeper(SweepMode::kIncludeUnexplored, 1e-6, 20);
  const BackupResult seed = estimate_q(q, model, cfg, 51, kEast);
  sweeper.enqueue_parents(model, 51, seed.delta);

  long total = 0;
  for (int round = 0; round < 100000 && !sweeper.queue().empty(); ++round)
    total += sweeper.sweep(q, model, cfg);
  CHECK(sweeper.queue().empty());
  CHECK(total > 0);
}
