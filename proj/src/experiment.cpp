#include "tct/harness/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "tct/classify.hpp"
#include "tct/errors.hpp"
#include "tct/learners/decision_tree.hpp"
#include "tct/learners/linear.hpp"
#include "tct/learners/threshold.hpp"
#include "tct/synthetic.hpp"
#include "tct/teachers/doubling.hpp"
#include "tct/teachers/osct.hpp"
#include "tct/teachers/sgd_stream.hpp"
#include "tct/teachers/tbatch.hpp"
#include "tct/teachers/tct.hpp"
#include "tct/teachers/tct_al.hpp"

namespace tct {

namespace {

double json_num(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  return j[key].get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{{"teacher", c.teacher},
                     {"learner", c.learner},
                     {"data_path", c.data_path},
                     {"label_column", c.label_column},
                     {"synthetic", c.synthetic},
                     {"synth_m", c.synth_m},
                     {"synth_d", c.synth_d},
                     {"synth_sep", c.synth_sep},
                     {"synth_v_star", c.synth_v_star},
                     {"test_fraction", c.test_fraction},
                     {"alpha", c.alpha},
                     {"m0_frac", c.m0_frac},
                     {"m0_abs", c.m0_abs},
                     {"budget", c.budget},
                     {"clock_mode", c.clock_mode == ClockMode::wall ? "wall" : "sim"},
                     {"cost_k", c.cost_k},
                     {"cost_f", c.cost_f},
                     {"c_clf", c.c_clf},
                     {"seed", c.seed},
                     {"trials", c.trials},
                     {"epochs", c.epochs},
                     {"lr", c.lr},
                     {"tree_min_split", c.tree_min_split},
                     {"tree_max_depth", c.tree_max_depth},
                     {"a2_cap", c.a2_cap},
                     {"osct_n_guess", c.osct_n_guess},
                     {"osct_exp_fraction", c.osct_exp_fraction},
                     {"osct_save_best", c.osct_save_best},
                     {"sgd_mini_batch", c.sgd_mini_batch},
                     {"tctbase_eps", c.tctbase_eps},
                     {"max_rounds", c.max_rounds}};
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  c.teacher = j.value("teacher", c.teacher);
  c.learner = j.value("learner", c.learner);
  c.data_path = j.value("data_path", c.data_path);
  c.label_column = j.value("label_column", c.label_column);
  c.synthetic = j.value("synthetic", c.synthetic);
  c.synth_m = j.value("synth_m", c.synth_m);
  c.synth_d = j.value("synth_d", c.synth_d);
  c.synth_sep = j.value("synth_sep", c.synth_sep);
  c.synth_v_star = j.value("synth_v_star", c.synth_v_star);
  c.test_fraction = j.value("test_fraction", c.test_fraction);
  c.alpha = j.value("alpha", c.alpha);
  c.m0_frac = j.value("m0_frac", c.m0_frac);
  c.m0_abs = j.value("m0_abs", c.m0_abs);
  c.budget = j.value("budget", c.budget);
  c.clock_mode = j.value("clock_mode", std::string("sim")) == "wall"
                     ? ClockMode::wall
                     : ClockMode::simulated;
  c.cost_k = j.value("cost_k", c.cost_k);
  c.cost_f = j.value("cost_f", c.cost_f);
  c.c_clf = j.value("c_clf", c.c_clf);
  c.seed = j.value("seed", c.seed);
  c.trials = j.value("trials", c.trials);
  c.epochs = j.value("epochs", c.epochs);
  c.lr = j.value("lr", c.lr);
  c.tree_min_split = j.value("tree_min_split", c.tree_min_split);
  c.tree_max_depth = j.value("tree_max_depth", c.tree_max_depth);
  c.a2_cap = j.value("a2_cap", c.a2_cap);
  c.osct_n_guess = j.value("osct_n_guess", c.osct_n_guess);
  c.osct_exp_fraction = j.value("osct_exp_fraction", c.osct_exp_fraction);
  c.osct_save_best = j.value("osct_save_best", c.osct_save_best);
  c.sgd_mini_batch = j.value("sgd_mini_batch", c.sgd_mini_batch);
  c.tctbase_eps = j.value("tctbase_eps", c.tctbase_eps);
  c.max_rounds = j.value("max_rounds", c.max_rounds);
}

namespace {

void round_to_json(nlohmann::json& j, const RoundRecord& r) {
  j = nlohmann::json{{"round", r.round},
                     {"s_size", r.s_size},
                     {"model_train_size", r.model_train_size},
                     {"added_random", r.added_random},
                     {"added_wrong", r.added_wrong},
                     {"batch1_size", r.batch1_size},
                     {"batch2_size", r.batch2_size},
                     {"batch2_capped", r.batch2_capped},
                     {"acc1", r.acc1},
                     {"acc2", r.acc2},
                     {"pooled_acc", r.pooled_acc},
                     {"ci_lower", r.ci_lower},
                     {"alpha_used", r.alpha_used},
                     {"elapsed_end", r.elapsed_end},
                     {"within_budget", r.within_budget},
                     {"is_best", r.is_best},
                     {"fallback", r.fallback},
                     {"shortfall", r.shortfall},
                     {"sent_count", r.sent_count},
                     {"wrong_weight_sum", r.wrong_weight_sum},
                     {"weight_doublings", r.weight_doublings},
                     {"log2_n", r.log2_n},
                     {"restarted", r.restarted},
                     {"rejection_draws", r.rejection_draws},
                     {"probe_error", r.probe_error},
                     {"test_accuracy", r.test_accuracy}};
}

void round_from_json(const nlohmann::json& j, RoundRecord& r) {
  r.round = j.value("round", 0);
  r.s_size = j.value("s_size", std::size_t{0});
  r.model_train_size = j.value("model_train_size", std::size_t{0});
  r.added_random = j.value("added_random", std::size_t{0});
  r.added_wrong = j.value("added_wrong", std::size_t{0});
  r.batch1_size = j.value("batch1_size", std::size_t{0});
  r.batch2_size = j.value("batch2_size", std::size_t{0});
  r.batch2_capped = j.value("batch2_capped", false);
  r.acc1 = json_num(j, "acc1", kNaN);
  r.acc2 = json_num(j, "acc2", kNaN);
  r.pooled_acc = json_num(j, "pooled_acc", kNaN);
  r.ci_lower = json_num(j, "ci_lower", kNaN);
  r.alpha_used = json_num(j, "alpha_used", kNaN);
  r.elapsed_end = json_num(j, "elapsed_end", 0.0);
  r.within_budget = j.value("within_budget", true);
  r.is_best = j.value("is_best", false);
  r.fallback = j.value("fallback", false);
  r.shortfall = j.value("shortfall", std::size_t{0});
  r.sent_count = j.value("sent_count", std::size_t{0});
  r.wrong_weight_sum = json_num(j, "wrong_weight_sum", kNaN);
  r.weight_doublings = j.value("weight_doublings", -1);
  r.log2_n = json_num(j, "log2_n", kNaN);
  r.restarted = j.value("restarted", false);
  r.rejection_draws = j.value("rejection_draws", std::size_t{0});
  r.probe_error = json_num(j, "probe_error", kNaN);
  r.test_accuracy = json_num(j, "test_accuracy", kNaN);
}

}  // namespace

void to_json(nlohmann::json& j, const ArchiveEntry& e) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const RoundRecord& r : e.run.rounds) {
    nlohmann::json row;
    round_to_json(row, r);
    rounds.push_back(std::move(row));
  }
  nlohmann::json params = nlohmann::json::array();
  for (const auto& [key, value] : e.run.params)
    params.push_back({{"name", key}, {"value", value}});
  j = nlohmann::json{
      {"run_id", e.run_id},
      {"dataset", e.dataset},
      {"error", e.error},
      {"t_full", e.t_full},
      {"t_full_runs", e.t_full_runs},
      {"t_full_valid", e.t_full_valid},
      {"baseline_acc", e.baseline_acc},
      {"test_size", e.test_size},
      {"final_test_acc", e.final_test_acc},
      {"config", e.config},
      {"run",
       {{"teacher_id", e.run.teacher_id},
        {"learner_id", e.run.learner_id},
        {"dataset_id", e.run.dataset_id},
        {"seed", e.run.seed},
        {"params", params},
        {"model_rule",
         e.run.model_rule == ModelRule::best_estimator ? "best" : "last"},
        {"budget_limit", e.run.budget_limit},
        {"returned_round", e.run.returned_round},
        {"best_estimator", e.run.best_estimator},
        {"pool_exhausted", e.run.pool_exhausted},
        {"rounds", rounds}}}};
}

void from_json(const nlohmann::json& j, ArchiveEntry& e) {
  e.run_id = j.value("run_id", std::string());
  e.dataset = j.value("dataset", std::string());
  e.error = j.value("error", std::string());
  e.t_full = json_num(j, "t_full", 0.0);
  e.t_full_runs = j.value("t_full_runs", std::vector<double>());
  e.t_full_valid = j.value("t_full_valid", true);
  e.baseline_acc = json_num(j, "baseline_acc", 0.0);
  e.test_size = j.value("test_size", std::size_t{0});
  e.final_test_acc = json_num(j, "final_test_acc", kNaN);
  e.config = j.value("config", nlohmann::json::object());
  const nlohmann::json& r = j.at("run");
  e.run.teacher_id = r.value("teacher_id", std::string());
  e.run.learner_id = r.value("learner_id", std::string());
  e.run.dataset_id = r.value("dataset_id", std::string());
  e.run.seed = r.value("seed", std::uint64_t{0});
  e.run.params.clear();
  if (r.contains("params"))
    for (const auto& kv : r["params"])
      e.run.params.emplace_back(kv.value("name", std::string()),
                                json_num(kv, "value", 0.0));
  e.run.model_rule = r.value("model_rule", std::string("last")) == "best"
                         ? ModelRule::best_estimator
                         : ModelRule::last_model;
  e.run.budget_limit = json_num(r, "budget_limit", 0.0);
  e.run.returned_round = r.value("returned_round", -1);
  e.run.best_estimator = json_num(r, "best_estimator", kNaN);
  e.run.pool_exhausted = r.value("pool_exhausted", false);
  e.run.rounds.clear();
  for (const auto& row : r.at("rounds")) {
    RoundRecord rec;
    round_from_json(row, rec);
    e.run.rounds.push_back(rec);
  }
}

std::string RunArchive::to_json_string() const {
  nlohmann::json j = nlohmann::json::array();
  for (const ArchiveEntry& e : entries_) {
    nlohmann::json row;
    to_json(row, e);
    j.push_back(std::move(row));
  }
  return j.dump(2);
}

void RunArchive::save(const std::string& directory) const {
  std::filesystem::create_directories(directory);
  std::ofstream out(directory + "/runs.json");
  if (!out) throw IoError("RunArchive::save: cannot write to " + directory);
  out << to_json_string() << "\n";
}

RunArchive RunArchive::load(const std::string& directory) {
  std::ifstream in(directory + "/runs.json");
  if (!in) throw IoError("RunArchive::load: no runs.json in " + directory);
  nlohmann::json j;
  in >> j;
  RunArchive archive;
  for (const auto& row : j) {
    ArchiveEntry e;
    from_json(row, e);
    archive.append(std::move(e));
  }
  return archive;
}

MeasureResult measure_full_training_time(
    const Learner& learner, const std::vector<LabeledExample>& train,
    ClockMode mode, CostModel cost, double validity_threshold) {
  MeasureResult result;
  if (mode == ClockMode::simulated) {
    result.t_full = simulated_train_cost(train.size(), cost.k, cost.f);
    result.runs = {result.t_full};
    result.valid = true;
    return result;
  }
  for (int i = 0; i < 4; ++i) {
    auto start = std::chrono::steady_clock::now();
    learner.train(train);
    result.runs.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count());
  }
  double sum = 0.0;
  for (double v : result.runs) sum += v;
  result.t_full = sum / 4.0;
  result.valid = result.t_full >= validity_threshold;
  return result;
}

std::unique_ptr<Learner> make_learner(const ExperimentConfig& c,
                                      int num_classes) {
  if (c.learner == "logistic")
    return std::make_unique<LogisticRegressionLearner>(c.epochs, c.lr,
                                                       num_classes);
  if (c.learner == "svm")
    return std::make_unique<LinearSvmLearner>(c.epochs, c.lr, num_classes);
  if (c.learner == "tree")
    return std::make_unique<DecisionTreeLearner>(c.tree_min_split,
                                                 c.tree_max_depth, num_classes);
  if (c.learner == "bagged-trees")
    return std::make_unique<BaggedTreesLearner>(10, c.seed, c.tree_min_split,
                                                c.tree_max_depth, num_classes);
  if (c.learner == "threshold") return std::make_unique<ThresholdLearner>();
  throw std::invalid_argument("unknown learner: " + c.learner);
}

Dataset resolve_dataset(const ExperimentConfig& c) {
  if (!c.data_path.empty())
    return load_dataset(c.data_path, c.seed, c.label_column,
                        1.0 - c.test_fraction);

  Dataset d;
  Rng rng = Rng(c.seed).substream("synthetic-data");
  std::size_t n_test = static_cast<std::size_t>(
      std::llround(c.test_fraction * static_cast<double>(c.synth_m)));
  std::size_t n_train = c.synth_m - n_test;
  if (c.synthetic == "blobs") {
    std::vector<double> mean0(c.synth_d, -c.synth_sep / 2.0);
    std::vector<double> mean1(c.synth_d, c.synth_sep / 2.0);
    SyntheticDistribution mu =
        SyntheticDistribution::gaussian_2class(mean0, mean1, 1.0);
    d.name = "blobs";
    d.num_classes = 2;
    for (std::size_t i = 0; i < n_train; ++i) d.train.push_back(mu.sample(rng));
    for (std::size_t i = 0; i < n_test; ++i) d.test.push_back(mu.sample(rng));
  } else if (c.synthetic == "threshold") {
    SyntheticDistribution mu =
        SyntheticDistribution::threshold_uniform(c.synth_v_star);
    d.name = "threshold";
    d.num_classes = 2;
    for (std::size_t i = 0; i < n_train; ++i) d.train.push_back(mu.sample(rng));
    for (std::size_t i = 0; i < n_test; ++i) d.test.push_back(mu.sample(rng));
  } else {
    throw std::invalid_argument("unknown synthetic source: " + c.synthetic);
  }
  return d;
}

namespace {

double evaluate(const Model& model, const std::vector<LabeledExample>& test) {
  if (test.empty()) return kNaN;
  std::size_t hits = 0;
  for (const auto& e : test)
    if (model.predict(e.features) == e.label) ++hits;
  return static_cast<double>(hits) / static_cast<double>(test.size());
}

TeacherRun dispatch_teacher(const ExperimentConfig& c, const Learner& learner,
                            ExamplePool& pool, std::size_t m0,
                            TimeBudget budget, CostClock& clock,
                            std::uint64_t run_seed) {
  if (c.teacher == "tct" || c.teacher == "dynamic-tct") {
    TctParams p;
    p.m0 = m0;
    p.alpha = c.alpha;
    p.a2_cap = c.a2_cap;
    p.seed = run_seed;
    p.keep_round_models = true;
    return c.teacher == "tct" ? run_tct(learner, pool, p, budget, clock)
                              : run_dynamic_tct(learner, pool, p, budget, clock);
  }
  if (c.teacher == "double") {
    DoubleParams p;
    p.m0 = m0;
    p.seed = run_seed;
    p.keep_round_models = true;
    return run_double(learner, pool, p, budget, clock);
  }
  if (c.teacher == "osct" || c.teacher == "osct-savebest") {
    OsctParams p;
    p.n_guess = c.osct_n_guess;
    p.n_guess_rule = c.osct_exp_fraction ? OsctGuessRule::exp_fraction
                                         : OsctGuessRule::fixed;
    p.save_best = c.osct_save_best || c.teacher == "osct-savebest";
    p.seed = run_seed;
    p.keep_round_models = true;
    return run_osct(learner, pool, p, budget, clock);
  }
  if (c.teacher == "tbatch") {
    TBatchParams p;
    p.seed = run_seed;
    p.keep_round_models = true;
    return run_tbatch(learner, pool, p, budget, clock);
  }
  if (c.teacher == "tct-al") {
    TctAlParams p;
    p.m0 = m0;
    p.alpha = c.alpha;
    p.seed = run_seed;
    p.keep_round_models = true;
    return run_tct_al(learner, pool, p, budget, clock);
  }
  if (c.teacher == "sgd-stream") {
    SgdStreamParams p;
    p.mini_batch = c.sgd_mini_batch != 0 ? c.sgd_mini_batch
                   : c.learner == "svm"  ? std::size_t{256}
                                         : std::size_t{512};
    p.seed = run_seed;
    p.keep_round_models = true;
    return run_sgd_stream(learner, pool, p, budget, clock);
  }
  throw std::invalid_argument("unknown teacher: " + c.teacher);
}

}  // namespace

std::vector<ArchiveEntry> run_experiment(const ExperimentConfig& config) {
  Dataset dataset = resolve_dataset(config);
  std::unique_ptr<Learner> learner =
      make_learner(config, dataset.num_classes);

  CostModel cost = learner->declared_cost();
  if (config.cost_k > 0) cost.k = config.cost_k;
  if (config.cost_f >= 0) cost.f = static_cast<CostShape>(config.cost_f);
  cost.c_clf = config.c_clf;

  MeasureResult measured = measure_full_training_time(
      *learner, dataset.train, config.clock_mode, cost);
  double budget_limit = config.budget > 0.0 ? config.budget : measured.t_full;

  std::size_t m0 = config.m0_abs > 0
                       ? config.m0_abs
                       : std::max<std::size_t>(
                             1, floor_count(config.m0_frac *
                                            static_cast<double>(
                                                dataset.train.size())));

  double baseline = majority_baseline(dataset);

  std::vector<ArchiveEntry> out;
  for (int trial = 0; trial < config.trials; ++trial) {
    std::uint64_t run_seed =
        derive_seed(config.seed, "trial", static_cast<std::uint64_t>(trial));

    ArchiveEntry entry;
    entry.dataset = dataset.name;
    entry.t_full = measured.t_full;
    entry.t_full_runs = measured.runs;
    entry.t_full_valid = measured.valid;
    entry.baseline_acc = baseline;
    entry.test_size = dataset.test.size();
    entry.config = config;
    entry.run_id = config.teacher + "-" + config.learner + "-" + dataset.name +
                   "-s" + std::to_string(run_seed);

    try {
      ExamplePool pool(dataset.train, dataset.num_classes, run_seed);
      CostClock clock(config.clock_mode, cost);
      TimeBudget budget(budget_limit);
      entry.run = dispatch_teacher(config, *learner, pool, m0, budget, clock,
                                   run_seed);
      entry.run.dataset_id = dataset.name;

      // Evaluate every round model on the test split, off the clock.
      for (std::size_t i = 0;
           i < entry.run.rounds.size() && i < entry.run.round_models.size();
           ++i)
        entry.run.rounds[i].test_accuracy =
            evaluate(*entry.run.round_models[i], dataset.test);
      if (entry.run.returned_model)
        entry.final_test_acc = evaluate(*entry.run.returned_model, dataset.test);
    } catch (const UnsupportedLearner& e) {
      entry.error = std::string("unsupported: ") + e.what();
    } catch (const UnsupportedCombination& e) {
      entry.error = std::string("unsupported: ") + e.what();
    } catch (const NoModel& e) {
      entry.error = std::string("no-model: ") + e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<double> default_alpha_grid() {
  return {0.05, 0.1, 0.2, 0.3, 0.45, 0.6, 0.9};
}

std::vector<ArchiveEntry> run_sweep(const ExperimentConfig& base,
                                    const std::vector<std::string>& teachers,
                                    const std::vector<double>& alphas) {
  std::vector<ArchiveEntry> out;
  for (const std::string& teacher : teachers) {
    for (double alpha : alphas) {
      ExperimentConfig config = base;
      config.teacher = teacher;
      config.alpha = alpha;
      for (ArchiveEntry& e : run_experiment(config))
        out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace tct
