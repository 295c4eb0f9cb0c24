#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tct/model.hpp"

namespace tct {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Which model a teacher would hand back if stopped at a given instant.
enum class ModelRule { best_estimator, last_model };

/// One row of a teacher run. Teachers fill the fields that apply to them;
/// the rest keep their defaults. test_accuracy is filled by the harness
/// after the run, off the clock.
struct RoundRecord {
  int round = 0;
  std::size_t s_size = 0;            // training-set size after the update
  std::size_t model_train_size = 0;  // size the round's model was trained on
  std::size_t added_random = 0;
  std::size_t added_wrong = 0;  // additions via the wrong-targeted channel
  std::size_t batch1_size = 0;
  std::size_t batch2_size = 0;
  bool batch2_capped = false;
  double acc1 = kNaN;
  double acc2 = kNaN;
  double pooled_acc = kNaN;
  double ci_lower = kNaN;
  double alpha_used = kNaN;
  double elapsed_end = 0.0;
  bool within_budget = true;
  bool is_best = false;
  bool fallback = false;
  std::size_t shortfall = 0;
  // OSCT
  std::size_t sent_count = 0;
  double wrong_weight_sum = kNaN;
  int weight_doublings = -1;
  double log2_n = kNaN;
  bool restarted = false;
  // TCTbase / streaming
  std::size_t rejection_draws = 0;
  double probe_error = kNaN;
  // harness
  double test_accuracy = kNaN;
};

/// Per-round composition details, kept only on request (tests, debugging).
struct RoundDetail {
  std::vector<std::size_t> scored_batch;   // pool indices in draw order
  std::vector<std::size_t> random_added;   // pool indices added via U
  std::vector<std::size_t> targeted_added; // pool indices added via W
  std::vector<char> targeted_is_wrong;     // verdict of the round's model
  std::vector<std::size_t> batch_sizes;    // streaming teachers
};

struct TeacherRun {
  std::string teacher_id;
  std::string learner_id;
  std::string dataset_id;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> params;
  ModelRule model_rule = ModelRule::last_model;
  double budget_limit = 0.0;

  std::vector<RoundRecord> rounds;
  std::vector<RoundDetail> details;      // empty unless requested
  std::vector<ModelPtr> round_models;    // empty unless requested

  ModelPtr returned_model;
  int returned_round = -1;
  double best_estimator = kNaN;
  bool pool_exhausted = false;
};

/// Floor for fractional example counts. The tiny guard absorbs the IEEE
/// representation error of ratios like 0.3*|S| that are integral in exact
/// arithmetic; genuine fractional values at pool scale sit far further
/// from integers.
inline std::size_t floor_count(double x) {
  if (x <= 0.0) return 0;
  return static_cast<std::size_t>(x + 1e-9);
}

}  // namespace tct
