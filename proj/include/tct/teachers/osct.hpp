#pragma once

#include <cstdint>

#include "tct/clock.hpp"
#include "tct/example.hpp"
#include "tct/model.hpp"
#include "tct/trace.hpp"

namespace tct {

enum class OsctGuessRule { fixed, exp_fraction };

struct OsctParams {
  double n_guess = 2.0;  // initial guess N of the effective class size
  OsctGuessRule n_guess_rule = OsctGuessRule::fixed;  // exp_fraction: N=2^{0.005m}
  bool save_best = false;  // return argmax CI lower bound instead of last
  double log_base = 2.0;   // base of the log in "4 log N"
  double z = 1.96;
  std::uint64_t seed = 0;
  int max_rounds = 100000;
  bool keep_round_models = false;
};

/// Multiplicative-weights teacher. Keeps a weight per pool example;
/// each round doubles the weights of the examples the current hypothesis
/// gets wrong until their sum reaches 1, then sends up to ceil(4 log N)
/// examples sampled by weight increase. A round that sends nothing
/// squares N and resets the weights. The learner retrains on the
/// cumulative sent set each round.
TeacherRun run_osct(const Learner& learner, ExamplePool& pool,
                    const OsctParams& params, TimeBudget budget,
                    CostClock& clock);

}  // namespace tct
