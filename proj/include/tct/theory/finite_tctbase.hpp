#pragma once

#include <cstdint>
#include <vector>

#include "tct/clock.hpp"
#include "tct/learners/finite_class.hpp"
#include "tct/synthetic.hpp"

namespace tct {

/// Count-based replay of the doubling teacher on a finite instance.
/// Consumes the RNG exactly like run_tctbase over the same distribution
/// (one draw per sample, literal rejection for wrong examples), but keeps
/// sample multiplicities instead of example lists, which makes the
/// million-sample theory experiments cheap.
struct FiniteTctBaseOutcome {
  std::vector<std::size_t> erm_sequence;  // hypothesis chosen at round i
  std::vector<double> round_elapsed;      // simulated time after training
  std::size_t returned = SIZE_MAX;        // last hypothesis within budget
  std::size_t total_samples = 0;
  bool draw_limit_hit = false;
};

FiniteTctBaseOutcome run_tctbase_finite(const FiniteHypothesisClass& cls,
                                        const SyntheticDistribution& mu,
                                        double alpha, int max_rounds,
                                        double budget, int k, CostShape f,
                                        std::uint64_t seed,
                                        std::size_t draw_limit = 1000000);

}  // namespace tct
