#include "tct/teachers/tbatch.hpp"

#include <stdexcept>

#include "tct/errors.hpp"

namespace tct {

std::size_t largest_batch_within(double budget, int k, CostShape f) {
  if (simulated_train_cost(1, k, f) > budget)
    throw NoModel("tbatch: budget below the cost of a single example");
  std::size_t lo = 1, hi = 2;
  while (simulated_train_cost(hi, k, f) <= budget) {
    lo = hi;
    if (hi > (SIZE_MAX >> 1)) break;
    hi <<= 1;
  }
  // invariant: cost(lo) <= budget < cost(hi)
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (simulated_train_cost(mid, k, f) <= budget)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

namespace {

template <typename DrawBatch>
TeacherRun run_tbatch_impl(const Learner& learner, const TBatchParams& p,
                           TimeBudget budget, CostClock& clock,
                           DrawBatch draw_batch) {
  std::size_t m;
  if (p.batch_size) {
    m = *p.batch_size;
  } else {
    if (clock.mode() != ClockMode::simulated)
      throw std::invalid_argument(
          "tbatch: wall clock needs an explicit batch size");
    m = largest_batch_within(budget.limit, clock.cost().k, clock.cost().f);
  }
  if (m == 0) throw NoModel("tbatch: batch size is zero");

  TeacherRun run;
  run.teacher_id = "tbatch";
  run.learner_id = learner.id();
  run.seed = p.seed;
  run.model_rule = ModelRule::last_model;
  run.budget_limit = budget.limit;
  run.params = {{"m", static_cast<double>(m)}};

  std::vector<LabeledExample> batch = draw_batch(m, run);
  clock.charge_training(batch.size());
  ModelPtr model = learner.train(batch);
  if (p.keep_round_models) run.round_models.push_back(model);

  RoundRecord rec;
  rec.round = 0;
  rec.model_train_size = batch.size();
  rec.s_size = batch.size();
  rec.added_random = batch.size();
  rec.elapsed_end = clock.elapsed();
  rec.within_budget = rec.elapsed_end <= budget.limit;
  // A deterministic overshoot (caller-supplied batch on the simulated
  // clock) yields no model; wall-mode timing jitter is tolerated.
  if (rec.within_budget || clock.mode() == ClockMode::wall) {
    rec.is_best = true;
    run.returned_model = model;
    run.returned_round = 0;
  }
  run.rounds.push_back(rec);
  return run;
}

}  // namespace

TeacherRun run_tbatch(const Learner& learner, ExamplePool& pool,
                      const TBatchParams& params, TimeBudget budget,
                      CostClock& clock) {
  return run_tbatch_impl(
      learner, params, budget, clock,
      [&](std::size_t m, TeacherRun& run) {
        DrawResult draw = pool.sample_unseen(std::min(m, pool.size()));
        run.pool_exhausted = draw.shortfall > 0 || m > pool.size();
        for (std::size_t i : draw.indices) pool.mark_trained(i);
        return pool.materialize(draw.indices);
      });
}

TeacherRun run_tbatch(const Learner& learner, const SyntheticDistribution& mu,
                      const TBatchParams& params, TimeBudget budget,
                      CostClock& clock) {
  Rng rng = Rng(params.seed).substream("tbatch");
  return run_tbatch_impl(learner, params, budget, clock,
                         [&](std::size_t m, TeacherRun&) {
                           std::vector<LabeledExample> batch;
                           batch.reserve(m);
                           for (std::size_t i = 0; i < m; ++i)
                             batch.push_back(mu.sample(rng));
                           return batch;
                         });
}

}  // namespace tct
