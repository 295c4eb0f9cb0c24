#pragma once

#include <cstdint>
#include <optional>

#include "tct/clock.hpp"
#include "tct/example.hpp"
#include "tct/model.hpp"
#include "tct/synthetic.hpp"
#include "tct/trace.hpp"

namespace tct {

struct TBatchParams {
  std::uint64_t seed = 0;
  /// Overrides the cost-model inversion (required in wall mode).
  std::optional<std::size_t> batch_size;
  bool keep_round_models = false;
};

/// Largest m with m^k * f(m) <= budget, by monotone search.
/// Throws NoModel when even one example does not fit.
std::size_t largest_batch_within(double budget, int k, CostShape f);

/// One-shot teacher: sends the largest random batch that trains within
/// the budget and trains exactly once.
TeacherRun run_tbatch(const Learner& learner, ExamplePool& pool,
                      const TBatchParams& params, TimeBudget budget,
                      CostClock& clock);

/// Same against an unlimited sampling source.
TeacherRun run_tbatch(const Learner& learner, const SyntheticDistribution& mu,
                      const TBatchParams& params, TimeBudget budget,
                      CostClock& clock);

}  // namespace tct
