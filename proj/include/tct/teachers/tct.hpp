#pragma once

#include <cstdint>

#include "tct/clock.hpp"
#include "tct/example.hpp"
#include "tct/model.hpp"
#include "tct/trace.hpp"

namespace tct {

struct TctParams {
  std::size_t m0 = 1;     // size of the first training set
  double alpha = 0.2;     // wrong-vs-random mix ratio, in [0,1]
  double a2_cap = 9.0;    // cap on |A2| as a multiple of |S|
  double z = 1.96;        // confidence multiplier for model selection
  std::uint64_t seed = 0;
  bool keep_round_models = false;
  bool record_details = false;
};

/// Size of the wrong-hunting batch: floor(alpha*|S|*acc1/(1-acc1)),
/// clipped at a2_cap*|S|; zero when acc1 is 0 (the scored batch already
/// supplies wrong examples) or 1 (no wrong examples exist).
struct Batch2Target {
  std::size_t size = 0;
  bool capped = false;
};
Batch2Target tct_batch2_target(std::size_t s_size, double acc1, double alpha,
                               double a2_cap);

/// The dynamic rule alpha = 1-acc1 collapses the formula to |S|*acc1.
Batch2Target dynamic_batch2_target(std::size_t s_size, double acc1,
                                   double a2_cap);

/// The round-doubling teacher. Each round trains on S, scores a fresh
/// random batch of |S| examples (acc1), draws a second batch sized
/// floor(alpha*|S|*acc1/(1-acc1)) (capped) to hunt for wrong examples,
/// keeps the model with the best 95%-CI lower bound seen within budget,
/// and grows S by exactly |S| new examples: |S|-floor(alpha*|S|) random
/// plus a wrong-first prefix of the leftovers.
TeacherRun run_tct(const Learner& learner, ExamplePool& pool,
                   const TctParams& params, TimeBudget budget,
                   CostClock& clock);

/// Variant with no fixed mix ratio: alpha is recomputed each round as
/// 1 - acc1, which makes the second batch exactly |S|*acc1 and removes
/// the cap blow-up near acc1 = 1.
TeacherRun run_dynamic_tct(const Learner& learner, ExamplePool& pool,
                           const TctParams& params, TimeBudget budget,
                           CostClock& clock);

}  // namespace tct
