#include "tct/theory/bad_example.hpp"

#include <limits>
#include <stdexcept>

#include "tct/theory/finite_tctbase.hpp"

namespace tct {

namespace {

// Positive sets of h1, h2, h3 and the all-positive classifier, over
// points 1..6; the target labels the odd points positive.
constexpr int kPositiveSets[4][6] = {
    {1, 1, 1, 1, 0, 0},  // {1,2,3,4}
    {1, 1, 0, 0, 1, 1},  // {1,2,5,6}
    {0, 0, 1, 1, 1, 1},  // {3,4,5,6}
    {1, 1, 1, 1, 1, 1},  // everything
};
constexpr int kTarget[6] = {1, 0, 1, 0, 1, 0};
constexpr int kWeightNinths[6] = {2, 1, 2, 1, 2, 1};

}  // namespace

FiniteHypothesisClass BadExampleInstance::hypothesis_class() const {
  FiniteHypothesisClass cls;
  cls.points = {1, 2, 3, 4, 5, 6};
  cls.num_classes = 2;
  cls.names = {"h1", "h2", "h3", "hbar"};
  for (const auto& row : kPositiveSets)
    cls.labels.emplace_back(row, row + 6);
  cls.validate();
  return cls;
}

SyntheticDistribution BadExampleInstance::distribution() const {
  std::vector<double> weights;
  std::vector<int> labels;
  for (int p = 0; p < 6; ++p) {
    weights.push_back(kWeightNinths[p] / 9.0);
    labels.push_back(kTarget[p]);
  }
  return SyntheticDistribution::finite_weighted({1, 2, 3, 4, 5, 6},
                                                std::move(weights),
                                                std::move(labels), 2);
}

int BadExampleInstance::error_ninths(std::size_t h) const {
  if (h >= 4) throw std::out_of_range("error_ninths: four hypotheses");
  int err = 0;
  for (int p = 0; p < 6; ++p)
    if (kPositiveSets[h][p] != kTarget[p]) err += kWeightNinths[p];
  return err;
}

BadExampleReport run_bad_example(int trials, int rounds, double alpha,
                                 std::uint64_t seed,
                                 std::size_t tbatch_samples) {
  if (trials < 1 || rounds < 1)
    throw std::invalid_argument("run_bad_example: trials, rounds >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("run_bad_example: alpha in (0,1)");

  BadExampleInstance instance;
  FiniteHypothesisClass cls = instance.hypothesis_class();
  SyntheticDistribution mu = instance.distribution();

  int tct_successes = 0;
  int tbatch_successes = 0;
  for (int trial = 0; trial < trials; ++trial) {
    std::uint64_t trial_seed =
        derive_seed(seed, "bad-example-trial", static_cast<std::uint64_t>(trial));

    FiniteTctBaseOutcome outcome = run_tctbase_finite(
        cls, mu, alpha, rounds, std::numeric_limits<double>::infinity(),
        /*k=*/1, CostShape::unit, trial_seed);
    for (std::size_t h : outcome.erm_sequence)
      if (h == BadExampleInstance::kBestIndex) {
        ++tct_successes;
        break;
      }

    Rng rng = Rng(trial_seed).substream("tbatch");
    std::vector<std::vector<std::uint64_t>> counts(
        cls.num_points(), std::vector<std::uint64_t>(2, 0));
    for (std::size_t i = 0; i < tbatch_samples; ++i) {
      std::size_t p = mu.sample_point_index(rng);
      ++counts[p][mu.point_label(p)];
    }
    if (finite_erm_counts(cls, counts) == BadExampleInstance::kBestIndex)
      ++tbatch_successes;
  }

  BadExampleReport report;
  report.trials = trials;
  report.rounds = rounds;
  report.alpha = alpha;
  report.tctbase_success_rate =
      static_cast<double>(tct_successes) / static_cast<double>(trials);
  report.tbatch_success_rate =
      static_cast<double>(tbatch_successes) / static_cast<double>(trials);
  return report;
}

}  // namespace tct
