#include "tct/teachers/tct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tct/classify.hpp"
#include "tct/errors.hpp"
#include "tct/stats.hpp"

namespace tct {

Batch2Target tct_batch2_target(std::size_t s_size, double acc1, double alpha,
                               double a2_cap) {
  if (acc1 >= 1.0) return {};
  Batch2Target out;
  double raw =
      alpha * static_cast<double>(s_size) * acc1 / (1.0 - acc1);
  double cap = a2_cap * static_cast<double>(s_size);
  if (raw > cap) {
    raw = cap;
    out.capped = true;
  }
  out.size = floor_count(raw);
  return out;
}

Batch2Target dynamic_batch2_target(std::size_t s_size, double acc1,
                                   double a2_cap) {
  if (acc1 >= 1.0) return {};
  Batch2Target out;
  double raw = static_cast<double>(s_size) * acc1;
  double cap = a2_cap * static_cast<double>(s_size);
  if (raw > cap) {
    raw = cap;
    out.capped = true;
  }
  out.size = floor_count(raw);
  return out;
}

namespace {

void validate(const TctParams& p) {
  if (p.alpha < 0.0 || p.alpha > 1.0)
    throw std::invalid_argument("TctParams: alpha must be in [0,1]");
  if (p.m0 < 1) throw std::invalid_argument("TctParams: m0 >= 1");
  if (!(p.a2_cap > 0.0)) throw std::invalid_argument("TctParams: a2_cap > 0");
}

DrawResult safe_draw(ExamplePool& pool, std::size_t n) {
  try {
    return pool.sample_unseen(n);
  } catch (const PoolExhausted&) {
    DrawResult empty;
    empty.shortfall = n;
    return empty;
  }
}

TeacherRun run_tct_impl(const Learner& learner, ExamplePool& pool,
                        const TctParams& p, TimeBudget budget, CostClock& clock,
                        bool dynamic_alpha) {
  validate(p);
  TeacherRun run;
  run.teacher_id = dynamic_alpha ? "dynamic-tct" : "tct";
  run.learner_id = learner.id();
  run.seed = p.seed;
  run.model_rule = ModelRule::best_estimator;
  run.budget_limit = budget.limit;
  run.params = {{"m0", static_cast<double>(p.m0)},
                {"alpha", p.alpha},
                {"a2_cap", p.a2_cap},
                {"z", p.z}};

  Rng rng = Rng(p.seed).substream("tct-teacher");

  DrawResult initial = pool.sample_unseen(p.m0);
  std::vector<std::size_t> training_set = initial.indices;
  for (std::size_t i : training_set) pool.mark_trained(i);

  double best_estimator = -1.0;
  int round = 0;
  while (true) {
    RoundRecord rec;
    rec.round = round;
    rec.model_train_size = training_set.size();
    if (round == 0 && initial.fallback_entered) rec.fallback = true;

    clock.charge_training(training_set.size());
    ModelPtr model = learner.train(pool.materialize(training_set));
    if (p.keep_round_models) run.round_models.push_back(model);

    DrawResult batch1 = safe_draw(pool, training_set.size());
    rec.batch1_size = batch1.indices.size();
    rec.fallback = rec.fallback || batch1.fallback_entered;
    rec.shortfall += batch1.shortfall;

    if (batch1.indices.empty()) {
      // Nothing left to classify: finish the round and end the run.
      rec.s_size = training_set.size();
      rec.elapsed_end = clock.elapsed();
      rec.within_budget = rec.elapsed_end <= budget.limit;
      run.rounds.push_back(rec);
      if (p.record_details) run.details.emplace_back();
      run.pool_exhausted = true;
      break;
    }

    ClassifySplit split1 = classify_and_split(*model, pool, batch1.indices, clock);
    double acc1 = split1.accuracy;
    rec.acc1 = acc1;
    double alpha = dynamic_alpha ? 1.0 - acc1 : p.alpha;
    rec.alpha_used = alpha;

    // The dynamic rule evaluates to |S|*acc1 exactly; the algebraic form
    // avoids a 0/0 as acc1 approaches 1.
    Batch2Target target =
        dynamic_alpha
            ? dynamic_batch2_target(training_set.size(), acc1, p.a2_cap)
            : tct_batch2_target(training_set.size(), acc1, p.alpha, p.a2_cap);
    rec.batch2_capped = target.capped;

    DrawResult batch2 = safe_draw(pool, target.size);
    rec.batch2_size = batch2.indices.size();
    rec.fallback = rec.fallback || batch2.fallback_entered;
    rec.shortfall += batch2.shortfall;

    ClassifySplit split2;
    AccuracyEstimate pooled{acc1, batch1.indices.size()};
    if (!batch2.indices.empty()) {
      split2 = classify_and_split(*model, pool, batch2.indices, clock);
      rec.acc2 = split2.accuracy;
      pooled = pooled_accuracy({acc1, batch1.indices.size()},
                               {split2.accuracy, batch2.indices.size()});
    }
    rec.pooled_acc = pooled.acc;
    double estimator = ci_lower_95(pooled, p.z);
    rec.ci_lower = estimator;

    double now = clock.elapsed();
    rec.elapsed_end = now;
    rec.within_budget = now <= budget.limit;
    if (now <= budget.limit && (round == 0 || estimator > best_estimator)) {
      best_estimator = estimator;
      run.returned_model = model;
      run.returned_round = round;
      run.best_estimator = estimator;
      rec.is_best = true;
    }

    // Split the round's |S| additions: the wrong-targeted quota gets the
    // floor, the random part the complement, so |S| doubles exactly.
    std::size_t w_target =
        floor_count(alpha * static_cast<double>(training_set.size()));
    std::size_t u_count = training_set.size() - w_target;
    u_count = std::min(u_count, batch1.indices.size());

    std::vector<std::size_t> positions(batch1.indices.size());
    for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
    std::vector<char> in_random(batch1.indices.size(), 0);
    for (std::size_t picked = 0; picked < u_count; ++picked) {
      std::size_t j = picked + rng.uniform_below(positions.size() - picked);
      std::swap(positions[picked], positions[j]);
      in_random[positions[picked]] = 1;
    }

    std::vector<char> is_wrong1(batch1.indices.size(), 0);
    for (std::size_t pos : split1.wrong) is_wrong1[pos] = 1;

    // V: wrong examples first (batch2 draw order, then batch1 draw
    // order), correct ones after, same sub-order.
    std::vector<std::pair<std::size_t, char>> leftovers;  // pool idx, wrong?
    for (std::size_t pos : split2.wrong)
      leftovers.push_back({batch2.indices[pos], 1});
    for (std::size_t pos : split1.wrong)
      if (!in_random[pos]) leftovers.push_back({batch1.indices[pos], 1});
    for (std::size_t pos : split2.correct)
      leftovers.push_back({batch2.indices[pos], 0});
    for (std::size_t pos : split1.correct)
      if (!in_random[pos]) leftovers.push_back({batch1.indices[pos], 0});

    RoundDetail detail;
    if (p.record_details) detail.scored_batch = batch1.indices;
    for (std::size_t picked = 0; picked < u_count; ++picked) {
      std::size_t idx = batch1.indices[positions[picked]];
      training_set.push_back(idx);
      pool.mark_trained(idx);
      if (p.record_details) detail.random_added.push_back(idx);
    }
    std::size_t w_count = std::min(w_target, leftovers.size());
    for (std::size_t i = 0; i < w_count; ++i) {
      training_set.push_back(leftovers[i].first);
      pool.mark_trained(leftovers[i].first);
      if (p.record_details) {
        detail.targeted_added.push_back(leftovers[i].first);
        detail.targeted_is_wrong.push_back(leftovers[i].second);
      }
    }
    rec.added_random = u_count;
    rec.added_wrong = w_count;
    rec.s_size = training_set.size();

    run.rounds.push_back(rec);
    if (p.record_details) run.details.push_back(std::move(detail));
    ++round;
    if (clock.elapsed() >= budget.limit) break;
  }
  return run;
}

}  // namespace

TeacherRun run_tct(const Learner& learner, ExamplePool& pool,
                   const TctParams& params, TimeBudget budget,
                   CostClock& clock) {
  return run_tct_impl(learner, pool, params, budget, clock, false);
}

TeacherRun run_dynamic_tct(const Learner& learner, ExamplePool& pool,
                           const TctParams& params, TimeBudget budget,
                           CostClock& clock) {
  return run_tct_impl(learner, pool, params, budget, clock, true);
}

}  // namespace tct
