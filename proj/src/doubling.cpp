#include "tct/teachers/doubling.hpp"

#include <stdexcept>

#include "tct/errors.hpp"

namespace tct {

TeacherRun run_double(const Learner& learner, ExamplePool& pool,
                      const DoubleParams& p, TimeBudget budget,
                      CostClock& clock) {
  if (p.m0 < 1) throw std::invalid_argument("DoubleParams: m0 >= 1");
  TeacherRun run;
  run.teacher_id = "double";
  run.learner_id = learner.id();
  run.seed = p.seed;
  run.model_rule = ModelRule::last_model;
  run.budget_limit = budget.limit;
  run.params = {{"m0", static_cast<double>(p.m0)}};

  std::vector<std::size_t> received;
  int round = 0;
  bool exhausted = false;
  while (true) {
    std::size_t want = p.m0 << round;
    RoundRecord rec;
    rec.round = round;
    try {
      DrawResult draw = pool.sample_unseen(want);
      rec.fallback = draw.fallback_entered;
      rec.shortfall = draw.shortfall;
      rec.added_random = draw.indices.size();
      for (std::size_t i : draw.indices) {
        received.push_back(i);
        pool.mark_trained(i);
      }
      exhausted = draw.shortfall > 0;
    } catch (const PoolExhausted&) {
      rec.shortfall = want;
      exhausted = true;
    }
    if (received.empty()) {
      run.pool_exhausted = true;
      break;
    }

    rec.model_train_size = received.size();
    rec.s_size = received.size();
    clock.charge_training(received.size());
    ModelPtr model = learner.train(pool.materialize(received));
    if (p.keep_round_models) run.round_models.push_back(model);

    double now = clock.elapsed();
    rec.elapsed_end = now;
    rec.within_budget = now <= budget.limit;
    if (rec.within_budget) {
      run.returned_model = model;
      run.returned_round = round;
    }
    run.rounds.push_back(rec);
    ++round;
    if (clock.elapsed() >= budget.limit) break;
    if (exhausted) {
      // The pool cannot grow the training set further; a retrain on the
      // same set cannot produce a different model.
      run.pool_exhausted = true;
      break;
    }
  }
  if (run.returned_round >= 0)
    run.rounds[run.returned_round].is_best = true;
  return run;
}

}  // namespace tct
