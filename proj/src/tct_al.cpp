#include "tct/teachers/tct_al.hpp"

#include <algorithm>
#include <stdexcept>

#include "tct/classify.hpp"
#include "tct/errors.hpp"
#include "tct/stats.hpp"

namespace tct {

namespace {

double top_two_gap(const std::vector<double>& probs) {
  double top1 = -1.0, top2 = -1.0;
  for (double p : probs) {
    if (p > top1) {
      top2 = top1;
      top1 = p;
    } else if (p > top2) {
      top2 = p;
    }
  }
  return top1 - top2;
}

}  // namespace

TeacherRun run_tct_al(const Learner& learner, ExamplePool& pool,
                      const TctAlParams& p, TimeBudget budget,
                      CostClock& clock) {
  if (p.alpha < 0.0 || p.alpha > 1.0)
    throw std::invalid_argument("TctAlParams: alpha must be in [0,1]");
  if (p.m0 < 1) throw std::invalid_argument("TctAlParams: m0 >= 1");

  TeacherRun run;
  run.teacher_id = "tct-al";
  run.learner_id = learner.id();
  run.seed = p.seed;
  run.model_rule = ModelRule::best_estimator;
  run.budget_limit = budget.limit;
  run.params = {{"m0", static_cast<double>(p.m0)}, {"alpha", p.alpha}};

  Rng rng = Rng(p.seed).substream("tct-al-teacher");

  std::vector<std::size_t> training_set = pool.sample_unseen(p.m0).indices;
  for (std::size_t i : training_set) pool.mark_trained(i);

  double best_estimator = -1.0;
  int round = 0;
  while (true) {
    RoundRecord rec;
    rec.round = round;
    rec.model_train_size = training_set.size();
    rec.alpha_used = p.alpha;

    clock.charge_training(training_set.size());
    ModelPtr model = learner.train(pool.materialize(training_set));
    if (!model->supports_probabilities())
      throw UnsupportedLearner(
          "tct-al needs class probabilities, which " + learner.id() +
          " does not provide");
    if (p.keep_round_models) run.round_models.push_back(model);

    std::size_t i_size = training_set.size();
    DrawResult batch;
    try {
      batch = pool.sample_unseen(2 * i_size);
    } catch (const PoolExhausted&) {
      batch.shortfall = 2 * i_size;
    }
    rec.batch1_size = batch.indices.size();
    rec.fallback = batch.fallback_entered;
    rec.shortfall = batch.shortfall;
    if (batch.indices.empty()) {
      rec.s_size = training_set.size();
      rec.elapsed_end = clock.elapsed();
      rec.within_budget = rec.elapsed_end <= budget.limit;
      run.rounds.push_back(rec);
      run.pool_exhausted = true;
      break;
    }

    ClassifySplit split =
        classify_and_split(*model, pool, batch.indices, clock);
    rec.acc1 = split.accuracy;
    rec.pooled_acc = split.accuracy;
    double estimator = ci_lower_95({split.accuracy, batch.indices.size()}, p.z);
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

    // Stable sort by uncertainty: ties keep draw order.
    std::vector<double> gap(batch.indices.size());
    for (std::size_t j = 0; j < batch.indices.size(); ++j)
      gap[j] = top_two_gap(model->predict_proba(pool[batch.indices[j]].features));
    std::vector<std::size_t> order(batch.indices.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return gap[a] < gap[b];
                     });

    std::size_t uncertain_quota =
        floor_count(p.alpha * static_cast<double>(i_size));
    uncertain_quota = std::min(uncertain_quota, order.size());
    std::size_t random_quota =
        std::min(i_size - floor_count(p.alpha * static_cast<double>(i_size)),
                 order.size() - uncertain_quota);

    RoundDetail detail;
    if (p.record_details) detail.scored_batch = batch.indices;
    std::vector<char> taken(order.size(), 0);
    for (std::size_t j = 0; j < uncertain_quota; ++j) {
      std::size_t pos = order[j];
      taken[pos] = 1;
      std::size_t idx = batch.indices[pos];
      training_set.push_back(idx);
      pool.mark_trained(idx);
      if (p.record_details) detail.targeted_added.push_back(idx);
    }
    std::vector<std::size_t> rest;
    for (std::size_t pos = 0; pos < order.size(); ++pos)
      if (!taken[pos]) rest.push_back(pos);
    for (std::size_t picked = 0; picked < random_quota; ++picked) {
      std::size_t j = picked + rng.uniform_below(rest.size() - picked);
      std::swap(rest[picked], rest[j]);
      std::size_t idx = batch.indices[rest[picked]];
      training_set.push_back(idx);
      pool.mark_trained(idx);
      if (p.record_details) detail.random_added.push_back(idx);
    }
    rec.added_wrong = uncertain_quota;
    rec.added_random = random_quota;
    rec.s_size = training_set.size();

    run.rounds.push_back(rec);
    if (p.record_details) run.details.push_back(std::move(detail));
    ++round;
    if (clock.elapsed() >= budget.limit) break;
  }
  return run;
}

}  // namespace tct
