#pragma once

#include <cstdint>

#include "tct/clock.hpp"
#include "tct/example.hpp"
#include "tct/model.hpp"
#include "tct/trace.hpp"

namespace tct {

struct SgdStreamParams {
  std::size_t mini_batch = 256;
  std::uint64_t seed = 0;
  bool keep_round_models = false;
  bool record_details = false;
};

/// Streaming baseline: feeds shuffled mini-batches (with repeated passes
/// over the pool, pass boundaries preserved) to an incrementally
/// updatable learner until the budget runs out. The trace records a
/// round at every doubling of the batch count; the returned model is the
/// last update that completed within the budget.
TeacherRun run_sgd_stream(const Learner& learner, ExamplePool& pool,
                          const SgdStreamParams& params, TimeBudget budget,
                          CostClock& clock);

}  // namespace tct
