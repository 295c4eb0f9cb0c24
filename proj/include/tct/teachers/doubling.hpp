#pragma once

#include <cstdint>

#include "tct/clock.hpp"
#include "tct/example.hpp"
#include "tct/model.hpp"
#include "tct/trace.hpp"

namespace tct {

struct DoubleParams {
  std::size_t m0 = 1;
  std::uint64_t seed = 0;
  bool keep_round_models = false;
};

/// Random-sampling baseline: round i sends m0*2^i new random examples and
/// retrains on everything received so far. Returns the last model whose
/// training completed within the budget.
TeacherRun run_double(const Learner& learner, ExamplePool& pool,
                      const DoubleParams& params, TimeBudget budget,
                      CostClock& clock);

}  // namespace tct
