#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "tct/clock.hpp"
#include "tct/harness/dataset.hpp"
#include "tct/model.hpp"
#include "tct/trace.hpp"

namespace tct {

struct ExperimentConfig {
  std::string teacher = "tct";    // tct | dynamic-tct | double | osct |
                                  // osct-savebest | tbatch | tctbase |
                                  // tct-al | sgd-stream
  std::string learner = "logistic";  // logistic | svm | tree | bagged-trees |
                                     // threshold
  std::string data_path;    // CSV; empty selects the synthetic source
  std::string label_column;
  std::string synthetic = "blobs";  // blobs | threshold
  std::size_t synth_m = 20000;
  std::size_t synth_d = 2;
  double synth_sep = 3.0;
  double synth_v_star = 0.5;
  double test_fraction = 0.3;

  double alpha = 0.2;
  double m0_frac = 0.005;
  std::size_t m0_abs = 0;  // 0 uses the fraction
  double budget = 0.0;     // 0 uses the measured full-training time
  ClockMode clock_mode = ClockMode::simulated;
  int cost_k = 0;    // 0 uses the learner's declaration
  int cost_f = -1;   // -1 learner default; else CostShape index
  double c_clf = 0.0;
  std::uint64_t seed = 1;
  int trials = 1;

  int epochs = 100;
  double lr = 0.5;
  int tree_min_split = 30;
  int tree_max_depth = 5;

  double a2_cap = 9.0;
  double osct_n_guess = 2.0;
  bool osct_exp_fraction = false;
  bool osct_save_best = false;
  std::size_t sgd_mini_batch = 0;  // 0: 256 for hinge, 512 for log loss
  double tctbase_eps = 0.01;
  int max_rounds = 30;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

struct MeasureResult {
  double t_full = 0.0;
  bool valid = true;
  std::vector<double> runs;  // the individual measurements (wall mode)
};

/// Full-dataset training time: the mean of four wall-clock trainings, or
/// the exact cost formula in simulated mode. `validity_threshold` flags
/// pairs that train too fast to time reliably (wall mode only).
MeasureResult measure_full_training_time(
    const Learner& learner, const std::vector<LabeledExample>& train,
    ClockMode mode, CostModel cost, double validity_threshold = 10.0);

struct ArchiveEntry {
  std::string run_id;
  std::string dataset;
  std::string error;  // non-empty when the combination could not run
  double t_full = 0.0;
  std::vector<double> t_full_runs;  // the individual measurements
  bool t_full_valid = true;         // the wall-mode validity filter
  double baseline_acc = 0.0;
  std::size_t test_size = 0;
  double final_test_acc = kNaN;
  TeacherRun run;
  nlohmann::json config;
};

void to_json(nlohmann::json& j, const ArchiveEntry& e);
void from_json(const nlohmann::json& j, ArchiveEntry& e);

/// Append-only store of finished runs; persists to runs.json so curves
/// and summaries can be recomputed without re-running anything.
class RunArchive {
public:
  void append(ArchiveEntry entry) { entries_.push_back(std::move(entry)); }
  const std::vector<ArchiveEntry>& entries() const { return entries_; }

  void save(const std::string& directory) const;
  static RunArchive load(const std::string& directory);

  std::string to_json_string() const;

private:
  std::vector<ArchiveEntry> entries_;
};

/// Builds the learner named in the config (with the dataset's class
/// count), resolves the clock and budget, runs the teacher once per
/// trial, evaluates every round model on the test split off the clock,
/// and appends one entry per trial. Incompatible (teacher, learner)
/// pairs produce an entry with `error` set instead of throwing.
std::vector<ArchiveEntry> run_experiment(const ExperimentConfig& config);

/// Default grid for the sensitivity sweep.
std::vector<double> default_alpha_grid();

/// One experiment per (teacher, alpha) pair, all in one archive.
std::vector<ArchiveEntry> run_sweep(const ExperimentConfig& base,
                                    const std::vector<std::string>& teachers,
                                    const std::vector<double>& alphas);

/// The learner factory used by run_experiment; exposed for tools/tests.
std::unique_ptr<Learner> make_learner(const ExperimentConfig& config,
                                      int num_classes);

/// The data source used by run_experiment: loads the CSV or generates
/// the synthetic dataset named in the config.
Dataset resolve_dataset(const ExperimentConfig& config);

}  // namespace tct
