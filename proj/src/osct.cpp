#include "tct/teachers/osct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tct/stats.hpp"

namespace tct {

TeacherRun run_osct(const Learner& learner, ExamplePool& pool,
                    const OsctParams& p, TimeBudget budget, CostClock& clock) {
  if (p.n_guess < 2.0)
    throw std::invalid_argument("OsctParams: initial guess N >= 2");
  if (!(p.log_base > 1.0))
    throw std::invalid_argument("OsctParams: log base > 1");

  std::size_t m = pool.size();
  if (m == 0) throw std::invalid_argument("run_osct: empty pool");

  TeacherRun run;
  run.teacher_id = p.save_best ? "osct-savebest" : "osct";
  run.learner_id = learner.id();
  run.seed = p.seed;
  run.model_rule =
      p.save_best ? ModelRule::best_estimator : ModelRule::last_model;
  run.budget_limit = budget.limit;

  double log2_n =
      p.n_guess_rule == OsctGuessRule::exp_fraction
          ? std::max(1.0, 0.005 * static_cast<double>(m))
          : std::log2(p.n_guess);
  run.params = {{"log2_n0", log2_n}, {"save_best", p.save_best ? 1.0 : 0.0}};

  Rng rng = Rng(p.seed).substream("osct-teacher");

  // Weights live in units of 1/(2m): every value is a power of two, so
  // the smallest-power doubling rule is exact (the threshold "sum >= 1"
  // becomes "scaled sum >= 2m").
  const double scale = 2.0 * static_cast<double>(m);
  std::vector<double> weights(m, 1.0);
  std::vector<std::size_t> sent;  // cumulative, duplicates allowed
  std::vector<LabeledExample> all = pool.materialize([&] {
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    return idx;
  }());

  double best_estimator = -1.0;
  for (int round = 0; round < p.max_rounds; ++round) {
    RoundRecord rec;
    rec.round = round;
    rec.model_train_size = sent.size();
    rec.log2_n = log2_n;

    clock.charge_training(sent.size());
    ModelPtr model = learner.train(pool.materialize(sent));
    if (p.keep_round_models) run.round_models.push_back(model);

    // Score the hypothesis on the full example set.
    std::vector<std::size_t> wrong;
    for (std::size_t i = 0; i < m; ++i)
      if (model->predict(all[i].features) != all[i].label) wrong.push_back(i);
    clock.charge_classification(m);

    double train_acc = 1.0 -
        static_cast<double>(wrong.size()) / static_cast<double>(m);
    rec.acc1 = train_acc;
    rec.pooled_acc = train_acc;
    rec.batch1_size = m;
    double estimator = ci_lower_95({train_acc, m}, p.z);
    rec.ci_lower = estimator;

    double now = clock.elapsed();
    rec.elapsed_end = now;
    rec.within_budget = now <= budget.limit;

    if (wrong.empty()) {
      // Perfect on the training pool: stop and return this hypothesis.
      rec.is_best = true;
      rec.s_size = sent.size();
      run.rounds.push_back(rec);
      run.returned_model = model;
      run.returned_round = round;
      run.best_estimator = estimator;
      break;
    }

    if (rec.within_budget) {
      if (p.save_best) {
        if (run.returned_model == nullptr || estimator > best_estimator) {
          best_estimator = estimator;
          run.returned_model = model;
          run.returned_round = round;
          run.best_estimator = estimator;
          rec.is_best = true;
        }
      } else {
        run.returned_model = model;
        run.returned_round = round;
      }
    }

    // Double the wrong weights until their sum reaches 1 (2m scaled).
    double sum_prev = 0.0;
    for (std::size_t i : wrong) sum_prev += weights[i];
    int doublings = 0;
    double factor = 1.0;
    while (sum_prev * factor < scale) {
      factor *= 2.0;
      ++doublings;
    }
    rec.weight_doublings = doublings;
    rec.wrong_weight_sum = sum_prev * factor / scale;

    // Send up to ceil(4 log N) examples, each picked by one uniform draw
    // against the cumulative weight increase.
    std::vector<double> cumulative(wrong.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < wrong.size(); ++j) {
      double increase = weights[wrong[j]] * (factor - 1.0);
      acc += increase;
      cumulative[j] = acc;
    }
    for (std::size_t i : wrong) weights[i] *= factor;

    int reps = static_cast<int>(
        std::ceil(4.0 * log2_n / std::log2(p.log_base)));
    std::size_t sent_count = 0;
    for (int rep = 0; rep < reps; ++rep) {
      double u = rng.uniform01() * scale;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      if (it == cumulative.end()) continue;  // "no example" mass
      std::size_t pick = wrong[static_cast<std::size_t>(
          it - cumulative.begin())];
      sent.push_back(pick);
      pool.mark_trained(pick);
      ++sent_count;
    }
    rec.sent_count = sent_count;
    rec.added_wrong = sent_count;

    if (sent_count == 0) {
      // Restart with a squared guess and fresh weights.
      rec.restarted = true;
      log2_n *= 2.0;
      std::fill(weights.begin(), weights.end(), 1.0);
    }

    rec.s_size = sent.size();
    run.rounds.push_back(rec);
    if (clock.elapsed() >= budget.limit) break;
  }
  if (!p.save_best && run.returned_round >= 0 &&
      run.returned_round < static_cast<int>(run.rounds.size()))
    run.rounds[run.returned_round].is_best = true;
  return run;
}

}  // namespace tct
