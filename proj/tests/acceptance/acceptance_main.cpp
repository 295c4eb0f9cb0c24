// Acceptance suite: one criterion per function, one pass/fail line each.
// Run all criteria or a single one with --criterion N.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tct/classify.hpp"
#include "tct/harness/experiment.hpp"
#include "tct/learners/finite_class.hpp"
#include "tct/learners/linear.hpp"
#include "tct/learners/threshold.hpp"
#include "tct/stats.hpp"
#include "tct/teachers/osct.hpp"
#include "tct/teachers/tct.hpp"
#include "tct/theory/bad_example.hpp"
#include "tct/theory/fallback.hpp"
#include "tct/theory/threshold_speedup.hpp"

using namespace tct;

namespace {

struct Checker {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <typename T>
  void expect_eq(const T& a, const T& b, const std::string& what) {
    if (!(a == b)) {
      std::ostringstream ss;
      ss << what << " (got " << a << ", want " << b << ")";
      failures.push_back(ss.str());
    }
  }
  void expect_near(double a, double b, double tol, const std::string& what) {
    if (!(std::abs(a - b) <= tol)) {
      std::ostringstream ss;
      ss << what << " (got " << a << ", want " << b << " +/- " << tol << ")";
      failures.push_back(ss.str());
    }
  }
};

// ---------------------------------------------------------------- 1 ---
void criterion_1(Checker& c) {
  BadExampleReport report = run_bad_example(100, 20, 0.9, 20260810);
  c.expect(report.tctbase_success_rate >= 0.0 &&
               report.tctbase_success_rate <= 0.20,
           "wrong-heavy doubling success rate in [0, 0.20], got " +
               std::to_string(report.tctbase_success_rate));
  c.expect(report.tbatch_success_rate >= 0.99,
           "batch control succeeds in >= 99/100 trials, got " +
               std::to_string(report.tbatch_success_rate));
}

// ---------------------------------------------------------------- 2 ---
void criterion_2(Checker& c) {
  c.expect_near(ci_lower_95({0.5, 100}), 0.402, 1e-12, "ci_lower(0.5,100)");
  c.expect_near(pooled_accuracy({0.8, 100}, {0.6, 50}).acc, 11.0 / 15.0,
                1e-12, "pooled((0.8,100),(0.6,50))");
  c.expect_near(fallback_time_multiplier(1.0 / 3.0, 2), 54.0, 1e-12,
                "time multiplier at (1/3, 2)");
  c.expect_near(agnostic_slack(0.2), 0.25, 1e-12, "agnostic slack at 0.2");
}

// ---------------------------------------------------------------- 3 ---
class HashModel : public Model {
public:
  int predict(std::span<const double> x) const override {
    return static_cast<long>(x[0]) % 3 == 0 ? 1 : 0;
  }
};

class HashModelLearner : public Learner {
public:
  ModelPtr train(const std::vector<LabeledExample>&) const override {
    return std::make_shared<HashModel>();
  }
  CostModel declared_cost() const override { return {1, CostShape::unit, 0.0}; }
  std::string id() const override { return "hash"; }
};

void criterion_3(Checker& c) {
  std::vector<LabeledExample> examples;
  Rng label_rng = Rng(33).substream("labels");
  for (std::size_t i = 0; i < 60000; ++i)
    examples.push_back({{static_cast<double>(i)},
                        label_rng.uniform01() < 0.5 ? 1 : 0});
  ExamplePool pool(examples, 2, 33);

  HashModelLearner learner;
  CostClock clock(ClockMode::simulated, {1, CostShape::unit, 0.0});
  TctParams params;
  params.m0 = 16;
  params.alpha = 0.2;
  params.seed = 33;
  params.record_details = true;
  // Ten full rounds cost 16*(2^10 - 1) = 16368; the eleventh overshoots.
  double budget = 20000.0;
  TeacherRun run = run_tct(learner, pool, params, TimeBudget(budget), clock);

  c.expect(run.rounds.size() == 11, "ten in-budget rounds plus the overshoot");
  double best = -1.0;
  for (std::size_t i = 0; i < run.rounds.size() && i < 10; ++i) {
    const RoundRecord& rec = run.rounds[i];
    c.expect(rec.s_size == 2 * rec.model_train_size,
             "round " + std::to_string(i) + ": |S| doubles");
    Batch2Target target = tct_batch2_target(rec.model_train_size, rec.acc1,
                                            params.alpha, params.a2_cap);
    c.expect(rec.batch2_size == target.size && rec.batch2_capped == target.capped,
             "round " + std::to_string(i) + ": |A2| formula or cap");
    const RoundDetail& detail = run.details[i];
    bool seen_correct = false, prefix_ok = true;
    for (char wrong : detail.targeted_is_wrong) {
      if (!wrong) seen_correct = true;
      if (seen_correct && wrong) prefix_ok = false;
    }
    c.expect(prefix_ok, "round " + std::to_string(i) + ": wrong-first prefix");
    if (rec.is_best) {
      c.expect(rec.ci_lower > best,
               "best-estimator values strictly increase");
      best = rec.ci_lower;
    }
  }
  const RoundRecord& overshoot = run.rounds.back();
  c.expect(overshoot.elapsed_end > budget, "final round overshoots the budget");
  c.expect(!overshoot.is_best, "no best model from a round ending after T");
}

// ---------------------------------------------------------------- 4 ---
void criterion_4(Checker& c) {
  // Structural run with a drifting deterministic hypothesis.
  {
    std::vector<LabeledExample> examples;
    Rng label_rng = Rng(44).substream("labels");
    for (int i = 0; i < 80; ++i)
      examples.push_back({{static_cast<double>(i)},
                          label_rng.uniform01() < 0.5 ? 1 : 0});
    ExamplePool pool(examples, 2, 44);

    class Drift : public Model {
    public:
      explicit Drift(int r) : r_(r) {}
      int predict(std::span<const double> x) const override {
        return static_cast<long>(x[0] + r_) % 3 == 0 ? 1 : 0;
      }

    private:
      int r_;
    };
    class DriftLearner : public Learner {
    public:
      ModelPtr train(const std::vector<LabeledExample>&) const override {
        return std::make_shared<Drift>(calls_++);
      }
      CostModel declared_cost() const override {
        return {1, CostShape::unit, 0.0};
      }
      std::string id() const override { return "drift"; }

    private:
      mutable int calls_ = 0;
    };

    DriftLearner learner;
    CostClock clock(ClockMode::simulated, {1, CostShape::unit, 0.0});
    OsctParams params;
    params.n_guess = 2.0;
    params.seed = 44;
    TeacherRun run = run_osct(learner, pool, params, TimeBudget(4000.0), clock);
    c.expect(run.rounds.size() >= 5, "run spans several rounds");
    int doubling_rounds = 0;
    for (const RoundRecord& rec : run.rounds) {
      if (!std::isnan(rec.wrong_weight_sum) && rec.weight_doublings >= 1) {
        ++doubling_rounds;
        c.expect(rec.wrong_weight_sum >= 1.0 && rec.wrong_weight_sum < 2.0,
                 "weight sum in [1,2) after update, got " +
                     std::to_string(rec.wrong_weight_sum));
      }
      std::size_t reps = static_cast<std::size_t>(std::ceil(4.0 * rec.log2_n));
      c.expect(rec.sent_count <= reps, "sends per round <= ceil(4 log2 N)");
    }
    c.expect(doubling_rounds >= 3, "run exercises the weight update");
  }

  // An engineered all-correct hypothesis stops the run at once.
  {
    std::vector<LabeledExample> examples;
    for (int i = 0; i < 40; ++i)
      examples.push_back({{static_cast<double>(i)}, 0});
    ExamplePool pool(examples, 2, 45);
    class Zero : public Model {
    public:
      int predict(std::span<const double>) const override { return 0; }
    };
    class ZeroLearner : public Learner {
    public:
      ModelPtr train(const std::vector<LabeledExample>&) const override {
        return std::make_shared<Zero>();
      }
      std::string id() const override { return "zero"; }
    };
    ZeroLearner learner;
    CostClock clock(ClockMode::simulated, {1, CostShape::unit, 0.0});
    OsctParams params;
    params.seed = 45;
    TeacherRun run = run_osct(learner, pool, params, TimeBudget(100.0), clock);
    c.expect(run.rounds.size() == 1 && run.rounds[0].sent_count == 0,
             "all-correct hypothesis terminates immediately with no sends");
    c.expect(run.returned_model != nullptr, "the perfect model is returned");
  }

  // A silent round squares N.
  {
    std::vector<LabeledExample> examples;
    for (int i = 0; i < 20; ++i)
      examples.push_back({{static_cast<double>(i)}, 0});
    ExamplePool pool(examples, 2, 46);
    class Half : public Model {
    public:
      int predict(std::span<const double> x) const override {
        return x[0] < 10 ? 1 : 0;
      }
    };
    class HalfLearner : public Learner {
    public:
      ModelPtr train(const std::vector<LabeledExample>&) const override {
        return std::make_shared<Half>();
      }
      CostModel declared_cost() const override {
        return {1, CostShape::unit, 0.0};
      }
      std::string id() const override { return "half"; }
    };
    HalfLearner learner;
    CostClock clock(ClockMode::simulated, {1, CostShape::unit, 0.0});
    OsctParams params;
    params.seed = 46;
    TeacherRun run = run_osct(learner, pool, params, TimeBudget(60.0), clock);
    bool restarted = false;
    for (std::size_t i = 0; i + 1 < run.rounds.size(); ++i) {
      if (run.rounds[i].sent_count == 0 && !std::isnan(run.rounds[i].log2_n)) {
        restarted = true;
        c.expect(run.rounds[i].restarted, "zero-send round flags the restart");
        c.expect_near(run.rounds[i + 1].log2_n, 2.0 * run.rounds[i].log2_n,
                      1e-12, "restart squares N");
        break;
      }
    }
    c.expect(restarted, "the engineered run contains a zero-send round");
  }
}

// ---------------------------------------------------------------- 5 ---
void criterion_5(Checker& c) {
  const double alpha = 0.5;
  const int k = 2;
  const int trials = 200;
  std::vector<double> eps_grid{1e-2, 1e-3, 1e-4, 1e-5};
  std::vector<double> log_tct, log_tbatch;
  std::vector<ThresholdExperiment> results;
  for (double eps : eps_grid) {
    results.push_back(
        run_threshold_experiment(eps, alpha, k, 20260810, trials));
    log_tct.push_back(results.back().tct_log2_samples_mean);
    log_tbatch.push_back(
        std::log2(static_cast<double>(results.back().tbatch_samples)));
  }
  for (std::size_t i = 0; i + 1 < results.size(); ++i) {
    double batch_ratio =
        static_cast<double>(results[i + 1].tbatch_samples) /
        static_cast<double>(results[i].tbatch_samples);
    c.expect(batch_ratio >= 6.0 && batch_ratio <= 14.0,
             "batch samples scale ~10x per decade, got " +
                 std::to_string(batch_ratio));
    double tct_ratio =
        results[i + 1].tct_samples_median / results[i].tct_samples_median;
    c.expect(tct_ratio <= 4.0,
             "doubling-teacher samples grow <= 4x per decade, got " +
                 std::to_string(tct_ratio));
  }
  GrowthFits fits = compare_growth_fits(log_tbatch, log_tct);
  c.expect(fits.sqrt_residual < fits.linear_residual,
           "sqrt-log fit beats the linear fit (" +
               std::to_string(fits.sqrt_residual) + " vs " +
               std::to_string(fits.linear_residual) + ")");
}

// ---------------------------------------------------------------- 6 ---
void criterion_6(Checker& c) {
  Claim1Stats stats = measure_claim1(0.5, 6, 10, 500, 20260810);
  for (std::size_t i = 0; i < stats.rounds.size(); ++i) {
    if (stats.attempts[i] == 0) {
      c.expect(false, "no attempts at round " + std::to_string(stats.rounds[i]));
      continue;
    }
    double freq = static_cast<double>(stats.achieved[i]) /
                  static_cast<double>(stats.attempts[i]);
    c.expect(freq >= 0.93,
             "round " + std::to_string(stats.rounds[i]) +
                 " shrink frequency >= 0.93, got " + std::to_string(freq));
  }
}

// ---------------------------------------------------------------- 7 ---
void criterion_7(Checker& c) {
  FallbackParams params;
  params.num_hypotheses = 32;
  params.num_points = 64;
  params.alpha = 0.2;
  params.k = 2;
  params.delta = 0.1;
  params.trials = 200;
  params.seed = 20260810;
  FallbackReport report = verify_fallback_bounds(params);
  c.expect_near(report.multiplier, 2.0 * std::pow(2.0 / 0.8, 3), 1e-9,
                "extended-budget multiplier");
  for (const FallbackBudgetReport& entry : report.budgets) {
    c.expect(entry.violation_fraction <= 0.15,
             "violation fraction <= 0.15 at m_T=" + std::to_string(entry.m_T) +
                 ", got " + std::to_string(entry.violation_fraction));
  }
}

// ---------------------------------------------------------------- 8 ---
void criterion_8(Checker& c) {
  Rng rng(20260810);
  // 500 threshold instances against the all-cuts scan.
  for (int rep = 0; rep < 500; ++rep) {
    std::size_t n = 1 + rng.uniform_below(200);
    std::vector<ThresholdExample> train;
    for (std::size_t i = 0; i < n; ++i)
      train.push_back({std::floor(rng.uniform01() * 40.0) / 8.0,
                       rng.uniform01() < 0.5 ? +1 : -1});
    long brute = static_cast<long>(n) + 1;
    std::vector<double> cuts{-std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity()};
    for (const auto& e : train) {
      cuts.push_back(e.x);
      cuts.push_back(
          std::nextafter(e.x, std::numeric_limits<double>::infinity()));
    }
    for (double v : cuts) {
      long err = 0;
      for (const auto& e : train)
        if ((e.x >= v ? 1 : -1) != e.y) ++err;
      brute = std::min(brute, err);
    }
    ThresholdHypothesis h = threshold_erm(train);
    long achieved = 0;
    for (const auto& e : train)
      if (h.predict(e.x) != e.y) ++achieved;
    if (achieved != brute) {
      c.expect(false, "threshold instance " + std::to_string(rep) +
                          ": erm error != brute minimum");
      return;
    }
  }
  // 500 finite-class instances against the exhaustive scan.
  for (int rep = 0; rep < 500; ++rep) {
    std::size_t num_points = 2 + rng.uniform_below(10);
    std::size_t num_hyps = 1 + rng.uniform_below(16);
    FiniteHypothesisClass cls;
    cls.num_classes = 2 + static_cast<int>(rng.uniform_below(2));
    for (std::size_t p = 0; p < num_points; ++p)
      cls.points.push_back(static_cast<double>(p));
    for (std::size_t h = 0; h < num_hyps; ++h) {
      std::vector<int> labels(num_points);
      for (auto& y : labels)
        y = static_cast<int>(rng.uniform_below(cls.num_classes));
      cls.labels.push_back(std::move(labels));
    }
    std::size_t n = rng.uniform_below(200);
    std::vector<std::pair<std::size_t, int>> train;
    for (std::size_t i = 0; i < n; ++i)
      train.push_back({rng.uniform_below(num_points),
                       static_cast<int>(rng.uniform_below(cls.num_classes))});
    std::size_t chosen = finite_erm(cls, train);
    auto err_of = [&](std::size_t h) {
      long err = 0;
      for (const auto& [p, y] : train)
        if (cls.labels[h][p] != y) ++err;
      return err;
    };
    long best = err_of(0);
    for (std::size_t h = 1; h < num_hyps; ++h) best = std::min(best, err_of(h));
    if (err_of(chosen) != best) {
      c.expect(false, "finite instance " + std::to_string(rep) +
                          ": erm error != brute minimum");
      return;
    }
  }
}

// ---------------------------------------------------------------- 9 ---
void criterion_9(Checker& c) {
  Rng rng(20260810);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t dim = 1 + rng.uniform_below(6);
    int k = 2 + static_cast<int>(rng.uniform_below(4));
    LinearWeights w;
    w.dim = dim;
    w.num_classes = k;
    w.w.resize(static_cast<std::size_t>(k) * (dim + 1));
    for (double& v : w.w) v = rng.normal();

    std::size_t batch_size = 3 + rng.uniform_below(10);
    std::vector<LabeledExample> batch;
    for (std::size_t i = 0; i < batch_size; ++i) {
      std::vector<double> x(dim);
      for (double& v : x) v = rng.normal();
      batch.push_back({x, static_cast<int>(rng.uniform_below(k))});
    }

    std::vector<double> analytic = logistic_gradient(w, batch);
    const double h = 1e-5;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.w.size(); ++i) {
      LinearWeights plus = w, minus = w;
      plus.w[i] += h;
      minus.w[i] -= h;
      double fd =
          (logistic_loss(plus, batch) - logistic_loss(minus, batch)) / (2 * h);
      num += (analytic[i] - fd) * (analytic[i] - fd);
      den += fd * fd;
    }
    double rel = std::sqrt(num) / std::max(1.0, std::sqrt(den));
    if (rel >= 1e-5) {
      c.expect(false, "gradient pair " + std::to_string(rep) +
                          ": relative error " + std::to_string(rel));
      return;
    }
  }
}

// --------------------------------------------------------------- 10 ---
void criterion_10(Checker& c) {
  ExperimentConfig config;
  config.teacher = "tct";
  config.learner = "svm";
  config.synthetic = "blobs";
  config.synth_m = 20000;
  config.alpha = 0.2;
  config.epochs = 60;
  config.seed = 20260810;

  Dataset dataset = resolve_dataset(config);
  auto learner = make_learner(config, dataset.num_classes);
  ModelPtr full_model = learner->train(dataset.train);
  std::size_t hits = 0;
  for (const auto& e : dataset.test)
    if (full_model->predict(e.features) == e.label) ++hits;
  double full_acc = static_cast<double>(hits) / dataset.test.size();

  RunArchive first, second;
  for (const char* teacher : {"tct", "double"}) {
    config.teacher = teacher;
    std::vector<ArchiveEntry> a = run_experiment(config);
    std::vector<ArchiveEntry> b = run_experiment(config);
    c.expect(a.size() == 1 && a[0].error.empty(),
             std::string(teacher) + " run completes");
    if (a.empty() || !a[0].error.empty()) return;
    c.expect(std::abs(a[0].final_test_acc - full_acc) <= 0.02,
             std::string(teacher) + " within 2pp of full training (" +
                 std::to_string(a[0].final_test_acc) + " vs " +
                 std::to_string(full_acc) + ")");
    first.append(a[0]);
    second.append(b[0]);
  }
  c.expect(first.to_json_string() == second.to_json_string(),
           "archive replays bit-identically");
}

struct Criterion {
  int number;
  const char* description;
  std::function<void(Checker&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[i + 1]);
  }

  std::vector<Criterion> criteria{
      {1, "wrong-heavy doubling fails, batch control succeeds", criterion_1},
      {2, "exact formula goldens", criterion_2},
      {3, "round-doubling teacher structural suite", criterion_3},
      {4, "set-cover teacher structural suite", criterion_4},
      {5, "threshold-learning speedup shape", criterion_5},
      {6, "per-round interval shrink frequency", criterion_6},
      {7, "extended-budget fallback guarantee", criterion_7},
      {8, "erm oracle equivalence", criterion_8},
      {9, "logistic gradient vs finite differences", criterion_9},
      {10, "end-to-end blobs sanity and replay", criterion_10},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    if (only != 0 && criterion.number != only) continue;
    Checker checker;
    auto start = std::chrono::steady_clock::now();
    criterion.fn(checker);
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (checker.failures.empty()) {
      std::printf("[PASS] criterion %d: %s (%.2fs)\n", criterion.number,
                  criterion.description, seconds);
    } else {
      ++failures;
      std::printf("[FAIL] criterion %d: %s (%.2fs)\n", criterion.number,
                  criterion.description, seconds);
      for (const std::string& f : checker.failures)
        std::printf("       - %s\n", f.c_str());
    }
  }
  return failures == 0 ? 0 : 1;
}
