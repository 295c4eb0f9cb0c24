#pragma once

#include <cstdint>
#include <vector>

#include "tct/learners/finite_class.hpp"
#include "tct/synthetic.hpp"

namespace tct {

/// Time-overhead factor of the doubling teacher: 2 * (2/(1-alpha))^(k+1).
double fallback_time_multiplier(double alpha, int k);

/// Additional-error slack in the agnostic bound: alpha / (1-alpha).
double agnostic_slack(double alpha);

struct FallbackParams {
  std::size_t num_hypotheses = 32;
  std::size_t num_points = 64;
  double alpha = 0.2;
  int k = 2;
  double delta = 0.1;
  int trials = 200;
  std::vector<std::size_t> batch_grid = {8, 16, 32, 64};  // m_T values
  bool agnostic = false;
  double label_noise = 0.2;  // agnostic flip probability
  std::uint64_t seed = 0;
  int max_rounds = 40;
  std::size_t rejection_draw_limit = 1000000;
};

struct FallbackBudgetReport {
  std::size_t m_T = 0;
  double budget = 0.0;           // T = cost(m_T)
  double extended_budget = 0.0;  // multiplier * T
  double eps_quantile = 0.0;     // batch teacher's (1-delta)-quantile error
                                 // (agnostic: of the additional error)
  double best_error = 0.0;       // min true error in the class
  double violation_fraction = 0.0;
};

struct FallbackReport {
  double multiplier = 0.0;
  double slack = 0.0;
  bool agnostic = false;
  std::vector<FallbackBudgetReport> budgets;
};

/// For each budget on the grid: estimates the batch teacher's error
/// guarantee empirically, then runs the doubling teacher with the
/// theorem's extended budget and reports how often it ends up worse.
FallbackReport verify_fallback_bounds(const FallbackParams& params);

}  // namespace tct
