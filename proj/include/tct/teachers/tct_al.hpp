#pragma once

#include <cstdint>

#include "tct/clock.hpp"
#include "tct/example.hpp"
#include "tct/model.hpp"
#include "tct/trace.hpp"

namespace tct {

struct TctAlParams {
  std::size_t m0 = 1;
  double alpha = 0.2;
  double z = 1.96;
  std::uint64_t seed = 0;
  bool keep_round_models = false;
  bool record_details = false;
};

/// Uncertainty-sampling variant: each round classifies 2i fresh random
/// examples (i = current training size), then adds the alpha*i examples
/// with the smallest top-two probability gap plus (1-alpha)*i random ones
/// from the remainder. Requires a learner whose models expose class
/// probabilities; throws UnsupportedLearner otherwise.
TeacherRun run_tct_al(const Learner& learner, ExamplePool& pool,
                      const TctAlParams& params, TimeBudget budget,
                      CostClock& clock);

}  // namespace tct
