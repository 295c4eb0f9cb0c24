#include <doctest.h>

#include <cmath>

#include "tct/rng.hpp"
#include "tct/stats.hpp"

using namespace tct;

TEST_CASE("pooled_accuracy: goldens") {
  AccuracyEstimate a = pooled_accuracy({0.5, 100}, {0.5, 20});
  CHECK(a.acc == doctest::Approx(0.5));
  CHECK(a.n == 120);

  AccuracyEstimate b = pooled_accuracy({1.0, 10}, {0.0, 10});
  CHECK(b.acc == doctest::Approx(0.5));
  CHECK(b.n == 20);

  AccuracyEstimate c = pooled_accuracy({0.8, 100}, {0.6, 50});
  CHECK(std::abs(c.acc - 11.0 / 15.0) <= 1e-12);
  CHECK(c.n == 150);
}

TEST_CASE("pooled_accuracy: empty second batch and properties") {
  AccuracyEstimate a = pooled_accuracy({0.7, 40}, {0.0, 0});
  CHECK(a.acc == doctest::Approx(0.7));
  CHECK(a.n == 40);
  CHECK_THROWS_AS(pooled_accuracy({0.5, 0}, {0.5, 5}), std::invalid_argument);

  Rng rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    AccuracyEstimate e1{rng.uniform01(), 1 + rng.uniform_below(500)};
    AccuracyEstimate e2{rng.uniform01(), 1 + rng.uniform_below(500)};
    AccuracyEstimate ab = pooled_accuracy(e1, e2);
    AccuracyEstimate ba = pooled_accuracy(e2, e1);
    CHECK(ab.acc == doctest::Approx(ba.acc));
    CHECK(ab.n == ba.n);
    CHECK(ab.acc >= std::min(e1.acc, e2.acc) - 1e-15);
    CHECK(ab.acc <= std::max(e1.acc, e2.acc) + 1e-15);
  }
}

TEST_CASE("ci_lower_95: goldens and clipping") {
  CHECK(std::abs(ci_lower_95({0.5, 100}) - 0.402) <= 1e-12);
  CHECK(ci_lower_95({1.0, 7}) == doctest::Approx(1.0));
  CHECK(std::abs(ci_lower_95({0.9, 36}) - 0.802) <= 1e-12);
  // Small n drives the raw bound negative; it clips at zero.
  CHECK(ci_lower_95({0.5, 1}) == doctest::Approx(0.0));

  Rng rng(4);
  for (int rep = 0; rep < 200; ++rep) {
    AccuracyEstimate e{rng.uniform01(), 1 + rng.uniform_below(400)};
    double lower = ci_lower_95(e);
    CHECK(lower <= e.acc + 1e-15);
    CHECK(lower >= 0.0);
    CHECK(lower <= 1.0);
  }
}

TEST_CASE("win_loss_test: goldens") {
  CHECK(win_loss_test(0.75, 0.75, 500) == WinLoss::tie);
  // gap 0.05 vs threshold 1.645*sqrt((0.09 + 0.1275)/10000) ~ 0.0077
  CHECK(win_loss_test(0.90, 0.85, 10000) == WinLoss::a_wins);
  // gap 0.005 vs threshold ~ 0.0223
  CHECK(win_loss_test(0.90, 0.895, 1000) == WinLoss::tie);
}

TEST_CASE("win_loss_test: swapping inputs mirrors the verdict") {
  Rng rng(5);
  for (int rep = 0; rep < 300; ++rep) {
    double a = rng.uniform01(), b = rng.uniform01();
    std::size_t m = 1 + rng.uniform_below(20000);
    WinLoss ab = win_loss_test(a, b, m);
    WinLoss ba = win_loss_test(b, a, m);
    if (ab == WinLoss::tie)
      CHECK(ba == WinLoss::tie);
    else if (ab == WinLoss::a_wins)
      CHECK(ba == WinLoss::b_wins);
    else
      CHECK(ba == WinLoss::a_wins);
  }
}

namespace {

TeacherRun make_run(ModelRule rule,
                    const std::vector<std::tuple<double, double, bool>>&
                        rounds /* elapsed, test_acc, is_best */) {
  TeacherRun run;
  run.model_rule = rule;
  for (const auto& [elapsed, acc, best] : rounds) {
    RoundRecord rec;
    rec.elapsed_end = elapsed;
    rec.test_accuracy = acc;
    rec.is_best = best;
    run.rounds.push_back(rec);
  }
  return run;
}

}  // namespace

TEST_CASE("normalized_curve: singleton and mean") {
  TeacherRun a = make_run(ModelRule::last_model, {{10, 0.6, true}});
  std::vector<CurveInput> one{{&a, 40.0, 0.1}};
  std::vector<double> grid{1.0};
  auto points = normalized_curve(one, grid);
  REQUIRE(points.size() == 1);
  CHECK(points[0].mean_acc == doctest::Approx(0.6));
  CHECK(points[0].n_runs == 1);

  TeacherRun b = make_run(ModelRule::last_model, {{10, 0.8, true}});
  std::vector<CurveInput> two{{&a, 40.0, 0.1}, {&b, 40.0, 0.1}};
  auto mean = normalized_curve(two, grid);
  CHECK(mean[0].mean_acc == doctest::Approx(0.7));
}

TEST_CASE("normalized_curve: step semantics, hand-traced") {
  // Models at 10 (acc 0.5) and 30 (acc 0.7); at t=0.5 of t_full=40 the
  // clock reads 20, before the second model exists.
  TeacherRun run =
      make_run(ModelRule::last_model, {{10, 0.5, false}, {30, 0.7, true}});
  std::vector<CurveInput> inputs{{&run, 40.0, 0.0}};
  std::vector<double> grid{0.1, 0.5, 1.0};
  auto points = normalized_curve(inputs, grid);
  CHECK(points[0].mean_acc == doctest::Approx(0.0));  // t=0.1 -> elapsed 4
  CHECK(points[1].mean_acc == doctest::Approx(0.5));
  CHECK(points[2].mean_acc == doctest::Approx(0.7));
}

TEST_CASE("normalized_curve: best-estimator rule follows is_best rounds") {
  TeacherRun run = make_run(
      ModelRule::best_estimator,
      {{10, 0.5, true}, {20, 0.9, false}, {30, 0.7, true}});
  std::vector<CurveInput> inputs{{&run, 30.0, 0.0}};
  std::vector<double> grid{1.0 / 3.0, 2.0 / 3.0, 1.0};
  auto points = normalized_curve(inputs, grid);
  CHECK(points[0].mean_acc == doctest::Approx(0.5));
  CHECK(points[1].mean_acc == doctest::Approx(0.5));  // round 2 never best
  CHECK(points[2].mean_acc == doctest::Approx(0.7));
}

TEST_CASE("normalized_curve: model-less grid points use the baseline") {
  TeacherRun run = make_run(ModelRule::last_model, {{100, 0.9, true}});
  std::vector<CurveInput> inputs{{&run, 100.0, 0.55}};
  std::vector<double> grid{0.0, 0.5, 1.0};
  auto points = normalized_curve(inputs, grid);
  CHECK(points[0].mean_acc == doctest::Approx(0.55));
  CHECK(points[1].mean_acc == doctest::Approx(0.55));
  CHECK(points[2].mean_acc == doctest::Approx(0.9));
}
