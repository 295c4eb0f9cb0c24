#pragma once

#include <cstdint>

#include "tct/learners/finite_class.hpp"
#include "tct/synthetic.hpp"

namespace tct {

/// The six-point instance where a wrong-heavy mix defeats the doubling
/// teacher: four classifiers over points {1..6}, the all-positive one is
/// best (error 1/3) while the other three sit at 4/9, and the target
/// labels odd points positive. Odd points carry 2/9 mass, even 1/9.
struct BadExampleInstance {
  static constexpr std::size_t kBestIndex = 3;  // the all-positive classifier

  FiniteHypothesisClass hypothesis_class() const;
  SyntheticDistribution distribution() const;

  /// True error of hypothesis h in ninths (exact integer arithmetic).
  int error_ninths(std::size_t h) const;
  double true_error(std::size_t h) const { return error_ninths(h) / 9.0; }
};

struct BadExampleReport {
  double tctbase_success_rate = 0.0;
  double tbatch_success_rate = 0.0;
  int trials = 0;
  int rounds = 0;
  double alpha = 0.0;
};

/// Runs the doubling teacher (success = the best classifier appears in
/// any round) against the one-shot batch control on the instance above.
BadExampleReport run_bad_example(int trials, int rounds, double alpha,
                                 std::uint64_t seed,
                                 std::size_t tbatch_samples = 1000);

}  // namespace tct
