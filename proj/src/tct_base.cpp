#include "tct/teachers/tct_base.hpp"

#include <stdexcept>

#include "tct/classify.hpp"

namespace tct {

TeacherRun run_tctbase(const Learner& learner, const SyntheticDistribution& mu,
                       const TctBaseParams& p, TimeBudget budget,
                       CostClock& clock) {
  if (!(p.alpha > 0.0 && p.alpha < 1.0))
    throw std::invalid_argument("TctBaseParams: alpha must be in (0,1)");

  TeacherRun run;
  run.teacher_id = "tctbase";
  run.learner_id = learner.id();
  run.seed = p.seed;
  run.model_rule = ModelRule::last_model;
  run.budget_limit = budget.limit;
  run.params = {{"alpha", p.alpha},
                {"max_rounds", static_cast<double>(p.max_rounds)}};

  Rng rng = Rng(p.seed).substream("tctbase");
  std::vector<LabeledExample> training_set;
  training_set.push_back(mu.sample(rng));

  for (int round = 1; round <= p.max_rounds; ++round) {
    RoundRecord rec;
    rec.round = round;
    rec.model_train_size = training_set.size();
    rec.alpha_used = p.alpha;

    clock.charge_training(training_set.size());
    ModelPtr model = learner.train(training_set);
    if (p.keep_round_models) run.round_models.push_back(model);

    double now = clock.elapsed();
    rec.elapsed_end = now;
    rec.within_budget = now <= budget.limit;
    if (rec.within_budget) {
      run.returned_model = model;
      run.returned_round = static_cast<int>(run.rounds.size());
    }
    if (now >= budget.limit) {
      rec.s_size = training_set.size();
      run.rounds.push_back(rec);
      break;
    }

    bool early_stop = false;
    if (p.eps_stop) {
      std::vector<LabeledExample> probe;
      probe.reserve(p.probe_size);
      for (std::size_t i = 0; i < p.probe_size; ++i)
        probe.push_back(mu.sample(rng));
      ClassifySplit split = classify_and_split(*model, probe, clock);
      rec.probe_error = 1.0 - split.accuracy;
      early_stop = rec.probe_error <= *p.eps_stop;
    }

    if (!early_stop) {
      // The unbiased share rounds down and the wrong channel takes the
      // remainder, so a wrong-heavy alpha starves the early rounds of
      // unbiased samples rather than the other way around.
      std::uint64_t pow2 = std::uint64_t{1} << round;
      std::size_t unbiased_quota =
          floor_count((1.0 - p.alpha) * static_cast<double>(pow2));
      std::size_t wrong_quota = static_cast<std::size_t>(pow2) - unbiased_quota;

      for (std::size_t i = 0; i < unbiased_quota; ++i)
        training_set.push_back(mu.sample(rng));
      rec.added_random = unbiased_quota;

      // Rejection-sample examples the current hypothesis gets wrong.
      // Picking and scoring candidates is charged at the per-example
      // classification rate (free under the assumption-iv idealization).
      std::size_t draws = 0;
      std::size_t accepted = 0;
      bool limit_hit = false;
      for (std::size_t i = 0; i < wrong_quota && !limit_hit; ++i) {
        std::size_t consecutive = 0;
        while (true) {
          LabeledExample e = mu.sample(rng);
          ++draws;
          if (model->predict(e.features) != e.label) {
            training_set.push_back(e);
            ++accepted;
            break;
          }
          if (++consecutive >= p.rejection_draw_limit) {
            limit_hit = true;
            break;
          }
        }
      }
      clock.charge_classification(draws);
      rec.rejection_draws = draws;
      rec.added_wrong = accepted;
      if (limit_hit) early_stop = true;
    }

    rec.s_size = training_set.size();
    rec.elapsed_end = clock.elapsed();
    run.rounds.push_back(rec);
    if (early_stop || clock.elapsed() >= budget.limit) break;
  }
  return run;
}

}  // namespace tct
