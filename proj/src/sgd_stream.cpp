#include "tct/teachers/sgd_stream.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>

#include "tct/errors.hpp"

namespace tct {

TeacherRun run_sgd_stream(const Learner& learner, ExamplePool& pool,
                          const SgdStreamParams& p, TimeBudget budget,
                          CostClock& clock) {
  if (!learner.supports_partial_update())
    throw UnsupportedLearner("sgd-stream needs partial updates, which " +
                             learner.id() + " does not provide");
  if (p.mini_batch < 1)
    throw std::invalid_argument("SgdStreamParams: mini_batch >= 1");
  if (pool.size() == 0)
    throw std::invalid_argument("run_sgd_stream: empty pool");

  TeacherRun run;
  run.teacher_id = "sgd-stream";
  run.learner_id = learner.id();
  run.seed = p.seed;
  run.model_rule = ModelRule::last_model;
  run.budget_limit = budget.limit;
  // Trace rounds follow a doubling-of-batches schedule rather than
  // one per update; flagged here so archives carry the deviation.
  run.params = {{"mini_batch", static_cast<double>(p.mini_batch)},
                {"doubling_eval_schedule", 1.0}};

  Rng rng = Rng(p.seed).substream("sgd-stream");
  ModelPtr model = learner.train({});  // zero-initialized starting model

  std::vector<std::size_t> pass_order(pool.size());
  std::iota(pass_order.begin(), pass_order.end(), std::size_t{0});

  // Rounds are logged on a doubling-of-batches schedule; the last
  // within-budget update is buffered so the returned model always has a
  // trace row even between checkpoints.
  std::optional<RoundRecord> pending;
  ModelPtr pending_model;
  auto push_record = [&](const RoundRecord& rec, const ModelPtr& m) {
    if (rec.within_budget) run.returned_round = static_cast<int>(run.rounds.size());
    run.rounds.push_back(rec);
    if (p.keep_round_models) run.round_models.push_back(m);
  };
  auto flush_pending = [&]() {
    if (pending) {
      push_record(*pending, pending_model);
      pending.reset();
    }
  };

  RoundDetail detail;
  std::size_t batches_done = 0;
  std::size_t examples_seen = 0;
  std::size_t next_checkpoint = 1;
  bool out_of_time = false;
  while (!out_of_time) {
    rng.shuffle(pass_order);  // a fresh pass over the pool
    std::size_t offset = 0;
    while (offset < pass_order.size()) {
      std::size_t size = std::min(p.mini_batch, pass_order.size() - offset);
      std::vector<std::size_t> batch_idx(pass_order.begin() + offset,
                                         pass_order.begin() + offset + size);
      offset += size;

      clock.charge_training(size);
      model = learner.partial_update(*model, pool.materialize(batch_idx));
      ++batches_done;
      examples_seen += size;
      if (p.record_details) detail.batch_sizes.push_back(size);

      double now = clock.elapsed();
      bool within = now <= budget.limit;

      RoundRecord rec;
      rec.round = static_cast<int>(batches_done);
      rec.s_size = examples_seen;
      rec.model_train_size = examples_seen;
      rec.added_random = size;
      rec.batch1_size = size;
      rec.elapsed_end = now;
      rec.within_budget = within;
      rec.sent_count = batches_done;

      if (within) {
        run.returned_model = model;
        if (batches_done >= next_checkpoint || now >= budget.limit) {
          pending.reset();
          push_record(rec, model);
          while (next_checkpoint <= batches_done) next_checkpoint *= 2;
        } else {
          pending = rec;
          pending_model = model;
        }
      } else {
        flush_pending();
        push_record(rec, model);
      }
      if (now >= budget.limit) {
        out_of_time = true;
        break;
      }
    }
  }
  if (p.record_details) run.details.push_back(std::move(detail));
  if (run.returned_round >= 0 &&
      run.returned_round < static_cast<int>(run.rounds.size()))
    run.rounds[run.returned_round].is_best = true;
  return run;
}

}  // namespace tct
