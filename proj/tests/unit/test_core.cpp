#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "helpers.hpp"
#include "tct/classify.hpp"
#include "tct/clock.hpp"
#include "tct/errors.hpp"
#include "tct/example.hpp"
#include "tct/learners/decision_tree.hpp"
#include "tct/learners/linear.hpp"
#include "tct/rng.hpp"
#include "tct/synthetic.hpp"

using namespace tct;
using tct::testing::LambdaModel;
using tct::testing::make_indexed_pool;

TEST_CASE("sample_unseen: zero request returns nothing") {
  ExamplePool pool = make_indexed_pool(10, 7);
  DrawResult d = pool.sample_unseen(0);
  CHECK(d.indices.empty());
  CHECK_FALSE(d.fallback_entered);
  CHECK(d.shortfall == 0);
}

TEST_CASE("sample_unseen: consecutive draws are disjoint") {
  ExamplePool pool = make_indexed_pool(10, 7);
  DrawResult a = pool.sample_unseen(4);
  DrawResult b = pool.sample_unseen(4);
  REQUIRE(a.indices.size() == 4);
  REQUIRE(b.indices.size() == 4);
  std::set<std::size_t> seen(a.indices.begin(), a.indices.end());
  for (std::size_t i : b.indices) CHECK(seen.insert(i).second);
  CHECK(pool.unseen_count() == 2);
  CHECK_FALSE(a.fallback_entered);
  CHECK_FALSE(b.fallback_entered);
}

TEST_CASE("sample_unseen: fallback draws only never-trained examples") {
  ExamplePool pool = make_indexed_pool(10, 11);
  DrawResult first = pool.sample_unseen(7);
  REQUIRE(first.indices.size() == 7);
  // Five of the seven join a training set; two stay eligible for fallback.
  for (std::size_t j = 0; j < 5; ++j) pool.mark_trained(first.indices[j]);
  std::set<std::size_t> eligible(first.indices.begin() + 5,
                                 first.indices.end());

  DrawResult second = pool.sample_unseen(5);
  CHECK(second.fallback_entered);
  CHECK(second.indices.size() == 5);
  CHECK(second.shortfall == 0);
  // First three fresh, last two recycled from the eligible set.
  std::set<std::size_t> fresh(second.indices.begin(),
                              second.indices.begin() + 3);
  for (std::size_t i : fresh) CHECK_FALSE(eligible.count(i));
  for (auto it = second.indices.begin() + 3; it != second.indices.end(); ++it)
    CHECK(eligible.count(*it));
}

TEST_CASE("sample_unseen: exhaustion with empty fallback throws") {
  ExamplePool pool = make_indexed_pool(4, 3);
  DrawResult all = pool.sample_unseen(4);
  for (std::size_t i : all.indices) pool.mark_trained(i);
  CHECK_THROWS_AS(pool.sample_unseen(1), PoolExhausted);
}

TEST_CASE("sample_unseen: no duplicates before exhaustion (property)") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ExamplePool pool = make_indexed_pool(57, seed);
    Rng rng = Rng(seed).substream("draw-sizes");
    std::set<std::size_t> seen;
    bool fallback = false;
    while (!fallback) {
      DrawResult d = pool.sample_unseen(1 + rng.uniform_below(9));
      fallback = d.fallback_entered;
      for (std::size_t i : d.indices) {
        if (!fallback) CHECK(seen.insert(i).second);
      }
      if (d.shortfall > 0) break;
    }
  }
}

TEST_CASE("classify_and_split: all-correct and constant-label cases") {
  CostClock clock(ClockMode::simulated, {1, CostShape::unit, 0.0});
  std::vector<LabeledExample> batch;
  for (int i = 0; i < 8; ++i)
    batch.push_back({{static_cast<double>(i)}, 1});

  LambdaModel always_right([](std::span<const double>) { return 1; });
  ClassifySplit s = classify_and_split(always_right, batch, clock);
  CHECK(s.accuracy == doctest::Approx(1.0));
  CHECK(s.wrong.empty());
  CHECK(s.correct.size() == 8);

  // Constant-label model on a batch where 3 of 10 match.
  std::vector<LabeledExample> mixed;
  for (int i = 0; i < 10; ++i)
    mixed.push_back({{static_cast<double>(i)}, i < 3 ? 0 : 1});
  LambdaModel constant([](std::span<const double>) { return 0; });
  ClassifySplit t = classify_and_split(constant, mixed, clock);
  CHECK(t.accuracy == doctest::Approx(0.3));
  CHECK(t.wrong.size() == 7);
  CHECK(t.correct.size() == 3);
  CHECK(std::is_sorted(t.wrong.begin(), t.wrong.end()));
  CHECK(std::is_sorted(t.correct.begin(), t.correct.end()));
}

TEST_CASE("classify_and_split: all-positive rule on the six-point instance") {
  // Enumerated by hand: the all-positive classifier disagrees with the
  // odd-positive target exactly on {2,4,6}, so one sample per point
  // scores 3 of 6.
  CostClock clock(ClockMode::simulated);
  std::vector<LabeledExample> batch;
  for (int p = 1; p <= 6; ++p)
    batch.push_back({{static_cast<double>(p)}, p % 2 == 1 ? 1 : 0});
  LambdaModel all_positive([](std::span<const double>) { return 1; });
  ClassifySplit s = classify_and_split(all_positive, batch, clock);
  CHECK(s.accuracy == doctest::Approx(0.5));
  CHECK(s.wrong.size() == 3);
}

TEST_CASE("classify_and_split: empty batch and conservation") {
  CostClock clock(ClockMode::simulated);
  LambdaModel m([](std::span<const double>) { return 0; });
  CHECK_THROWS_AS(classify_and_split(m, {}, clock), EmptyBatch);

  Rng rng(99);
  for (int rep = 0; rep < 25; ++rep) {
    std::size_t n = 1 + rng.uniform_below(40);
    std::vector<LabeledExample> batch;
    for (std::size_t i = 0; i < n; ++i)
      batch.push_back({{rng.uniform01()},
                       static_cast<int>(rng.uniform_below(3))});
    LambdaModel coin([](std::span<const double> x) {
      return x[0] > 0.5 ? 1 : 0;
    });
    ClassifySplit s = classify_and_split(coin, batch, clock);
    CHECK(s.wrong.size() + s.correct.size() == n);
  }
}

TEST_CASE("classify_and_split charges the per-example cost") {
  CostClock clock(ClockMode::simulated, {1, CostShape::unit, 0.25});
  std::vector<LabeledExample> batch(8, LabeledExample{{0.0}, 0});
  LambdaModel m([](std::span<const double>) { return 0; });
  classify_and_split(m, batch, clock);
  CHECK(clock.elapsed() == doctest::Approx(2.0));
}

TEST_CASE("simulated_train_cost: goldens and monotonicity") {
  CHECK(simulated_train_cost(0, 2, CostShape::unit) == 0.0);
  CHECK(simulated_train_cost(10, 2, CostShape::unit) == doctest::Approx(100.0));
  // 8 * log2(10), checked against independent arithmetic.
  CHECK(simulated_train_cost(8, 1, CostShape::log2) ==
        doctest::Approx(8.0 * std::log2(10.0)).epsilon(1e-12));
  CHECK_THROWS_AS(simulated_train_cost(5, 4, CostShape::unit),
                  std::invalid_argument);

  for (int k = 1; k <= 3; ++k)
    for (std::size_t m = 1; m < 200; ++m)
      CHECK(simulated_train_cost(m, k, CostShape::log2) <
            simulated_train_cost(m + 1, k, CostShape::log2));
}

TEST_CASE("cost clock: monotone and bit-replayable") {
  auto replay = [] {
    CostClock clock(ClockMode::simulated, {2, CostShape::log2, 0.5});
    std::vector<double> trace;
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
      if (rng.uniform01() < 0.5)
        clock.charge_training(1 + rng.uniform_below(100));
      else
        clock.charge_classification(rng.uniform_below(50));
      trace.push_back(clock.elapsed());
    }
    return trace;
  };
  std::vector<double> a = replay();
  std::vector<double> b = replay();
  CHECK(a == b);
  CHECK(std::is_sorted(a.begin(), a.end()));
}

TEST_CASE("time budget validates") {
  CHECK_THROWS_AS(TimeBudget(0.0), std::invalid_argument);
  CHECK_THROWS_AS(TimeBudget(-3.0), std::invalid_argument);
  CHECK(TimeBudget(2.5).limit == 2.5);
}

TEST_CASE("rng: labeled substreams are independent and replayable") {
  Rng root(42);
  Rng a = root.substream("pool");
  Rng b = root.substream("teacher");
  Rng a2 = Rng(42).substream("pool");
  CHECK(a.next_u64() != b.next_u64());
  Rng a3 = Rng(42).substream("pool");
  CHECK(a2.next_u64() == a3.next_u64());
  CHECK(Rng(42).substream("x", 0).next_u64() !=
        Rng(42).substream("x", 1).next_u64());
}

TEST_CASE("rng: uniform_below stays in range") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) CHECK(rng.uniform_below(7) < 7);
  CHECK_THROWS_AS(rng.uniform_below(0), std::invalid_argument);
}

TEST_CASE("probabilistic models: probabilities sum to one, argmax agrees") {
  Rng rng(17);
  std::vector<LabeledExample> train;
  for (int i = 0; i < 120; ++i) {
    double x = rng.uniform01() * 4.0 - 2.0;
    double y = rng.uniform01() * 4.0 - 2.0;
    int label = x + y > 0 ? (x > 0.5 ? 2 : 1) : 0;
    train.push_back({{x, y}, label});
  }
  LogisticRegressionLearner logistic(60, 0.5, 3);
  DecisionTreeLearner tree(2, 4, 3);
  for (const Learner* learner :
       {static_cast<const Learner*>(&logistic),
        static_cast<const Learner*>(&tree)}) {
    ModelPtr model = learner->train(train);
    REQUIRE(model->supports_probabilities());
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> x{rng.uniform01() * 4 - 2, rng.uniform01() * 4 - 2};
      std::vector<double> p = model->predict_proba(x);
      REQUIRE(p.size() == 3);
      double total = 0.0;
      for (double v : p) total += v;
      CHECK(std::abs(total - 1.0) <= 1e-9);
      int argmax = static_cast<int>(
          std::max_element(p.begin(), p.end()) - p.begin());
      CHECK(argmax == model->predict(x));
    }
  }
}

TEST_CASE("example pool validates invariants") {
  std::vector<LabeledExample> ragged{{{1.0, 2.0}, 0}, {{1.0}, 1}};
  CHECK_THROWS_AS(ExamplePool(ragged, 2, 1), std::invalid_argument);
  std::vector<LabeledExample> bad_label{{{1.0}, 5}};
  CHECK_THROWS_AS(ExamplePool(bad_label, 2, 1), std::invalid_argument);
}

TEST_CASE("synthetic distributions validate and sample consistently") {
  CHECK_THROWS_AS(SyntheticDistribution::finite_weighted({1, 2}, {0.7, 0.7},
                                                         {0, 1}, 2),
                  std::invalid_argument);
  SyntheticDistribution mu = SyntheticDistribution::threshold_uniform(0.3);
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    LabeledExample e = mu.sample(rng);
    CHECK(e.label == (e.features[0] >= 0.3 ? 1 : 0));
  }
  CHECK(mu.threshold_true_error(0.3) == 0.0);
  CHECK(mu.threshold_true_error(0.5) == doctest::Approx(0.2));
}
