#pragma once

#include <cstdint>
#include <optional>

#include "tct/clock.hpp"
#include "tct/model.hpp"
#include "tct/synthetic.hpp"
#include "tct/trace.hpp"

namespace tct {

struct TctBaseParams {
  double alpha = 0.5;  // in (0,1)
  /// Early stop once the probe error estimate drops to this level.
  std::optional<double> eps_stop;
  std::size_t probe_size = 2000;
  int max_rounds = 30;
  /// Consecutive non-wrong draws after which the rejection sampler
  /// declares the error negligible and stops the run.
  std::size_t rejection_draw_limit = 1000000;
  std::uint64_t seed = 0;
  bool keep_round_models = false;
};

/// Stripped-down doubling teacher over an unlimited sampling source.
/// Starts from a single example; round i trains, then adds 2^i fresh
/// samples: a (1-alpha) fraction unbiased and an alpha fraction drawn by
/// rejection until the current hypothesis is wrong on them. Returns the
/// last hypothesis trained within the budget.
TeacherRun run_tctbase(const Learner& learner, const SyntheticDistribution& mu,
                       const TctBaseParams& params, TimeBudget budget,
                       CostClock& clock);

}  // namespace tct
