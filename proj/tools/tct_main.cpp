// Command-line front end: run experiments, sweep parameter grids, check
// the theory bounds, and re-emit reports from stored archives.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tct/harness/dataset.hpp"
#include "tct/harness/experiment.hpp"
#include "tct/harness/reports.hpp"
#include "tct/theory/bad_example.hpp"
#include "tct/theory/fallback.hpp"
#include "tct/theory/threshold_speedup.hpp"

using namespace tct;

namespace {

void add_config_flags(CLI::App* cmd, ExperimentConfig& config,
                      std::string& clock_name, std::string& f_name) {
  cmd->add_option("--teacher", config.teacher,
                  "tct|dynamic-tct|double|osct|osct-savebest|tbatch|tct-al|"
                  "sgd-stream");
  cmd->add_option("--learner", config.learner,
                  "logistic|svm|tree|bagged-trees|threshold");
  cmd->add_option("--data", config.data_path, "CSV dataset path");
  cmd->add_option("--label-column", config.label_column,
                  "label column name or index (default: last)");
  cmd->add_option("--synthetic", config.synthetic,
                  "synthetic source when no --data: blobs|threshold");
  cmd->add_option("--synth-m", config.synth_m, "synthetic dataset size");
  cmd->add_option("--synth-d", config.synth_d, "synthetic dimension");
  cmd->add_option("--synth-sep", config.synth_sep, "blob mean separation");
  cmd->add_option("--alpha", config.alpha, "wrong-example mix ratio");
  cmd->add_option("--m0-frac", config.m0_frac,
                  "first batch as a fraction of the pool");
  cmd->add_option("--m0", config.m0_abs, "first batch size (overrides frac)");
  cmd->add_option("--budget", config.budget,
                  "time budget (default: full-training time)");
  cmd->add_option("--clock", clock_name, "wall|sim")
      ->check(CLI::IsMember({"wall", "sim"}));
  cmd->add_option("--k", config.cost_k, "cost exponent (0: learner default)");
  cmd->add_option("--f", f_name, "cost shape: const|log")
      ->check(CLI::IsMember({"default", "const", "log"}));
  cmd->add_option("--cclf", config.c_clf, "per-example classification cost");
  cmd->add_option("--seed", config.seed, "root seed");
  cmd->add_option("--trials", config.trials, "independent trials");
  cmd->add_option("--epochs", config.epochs, "linear-learner epochs");
  cmd->add_option("--lr", config.lr, "linear-learner learning rate");
  cmd->add_option("--sgd-batch", config.sgd_mini_batch,
                  "mini-batch size (0: 256 hinge / 512 log)");
  cmd->add_option("--osct-n", config.osct_n_guess, "initial class-size guess");
  cmd->add_flag("--osct-exp-fraction", config.osct_exp_fraction,
                "start the guess at 2^(0.005 m)");
  cmd->add_flag("--osct-save-best", config.osct_save_best,
                "return the best-CI model instead of the last");
  cmd->add_option("--a2-cap", config.a2_cap, "second-batch cap multiple");
}

void finish_config(ExperimentConfig& config, const std::string& clock_name,
                   const std::string& f_name) {
  config.clock_mode =
      clock_name == "wall" ? ClockMode::wall : ClockMode::simulated;
  if (f_name == "const")
    config.cost_f = static_cast<int>(CostShape::unit);
  else if (f_name == "log")
    config.cost_f = static_cast<int>(CostShape::log2);
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::string token;
  for (char ch : csv + ",") {
    if (ch == ',') {
      if (!token.empty()) out.push_back(std::stod(token));
      token.clear();
    } else {
      token += ch;
    }
  }
  return out;
}

void print_summary(const RunArchive& archive) {
  for (const ArchiveEntry& e : archive.entries()) {
    if (!e.error.empty()) {
      std::printf("%-40s ERROR %s\n", e.run_id.c_str(), e.error.c_str());
      continue;
    }
    std::printf("%-40s rounds=%zu final_acc=%.4f budget=%.6g\n",
                e.run_id.c_str(), e.run.rounds.size(), e.final_test_acc,
                e.run.budget_limit);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-constrained teaching workbench"};
  app.require_subcommand(1);

  // --- run ---
  ExperimentConfig run_config;
  std::string run_clock = "sim", run_f = "default", run_out;
  bool run_svg = false;
  CLI::App* run_cmd = app.add_subcommand("run", "run one experiment");
  add_config_flags(run_cmd, run_config, run_clock, run_f);
  run_cmd->add_option("--out", run_out, "output directory for reports");
  run_cmd->add_flag("--svg", run_svg, "also draw the curves as SVG");

  // --- sweep ---
  ExperimentConfig sweep_config;
  std::string sweep_clock = "sim", sweep_f = "default", sweep_out;
  std::string sweep_alphas = "0.05,0.1,0.2,0.3,0.45,0.6,0.9";
  std::string sweep_teachers;
  bool sweep_svg = false;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run a grid of alphas and/or teachers");
  add_config_flags(sweep_cmd, sweep_config, sweep_clock, sweep_f);
  sweep_cmd->add_option("--alphas", sweep_alphas, "comma-separated alphas");
  sweep_cmd->add_option("--teachers", sweep_teachers,
                        "comma-separated teacher list (overrides --teacher)");
  sweep_cmd->add_option("--out", sweep_out, "output directory");
  sweep_cmd->add_flag("--svg", sweep_svg, "also draw the curves as SVG");

  // --- theory ---
  std::string theory_check = "speedup";
  double theory_alpha = 0.5;
  int theory_k = 2, theory_trials = 200;
  std::uint64_t theory_seed = 1;
  std::string theory_eps = "1e-2,1e-3,1e-4";
  std::string theory_out;
  double fb_alpha = 0.2, fb_delta = 0.1, fb_noise = 0.2;
  bool fb_agnostic = false;
  CLI::App* theory_cmd =
      app.add_subcommand("theory", "empirical checks of the guarantees");
  theory_cmd->add_option("--out", theory_out, "also write the table as CSV");
  theory_cmd->add_option("--check", theory_check, "speedup|claim1|fallback")
      ->check(CLI::IsMember({"speedup", "claim1", "fallback"}));
  theory_cmd->add_option("--alpha", theory_alpha, "mix ratio for the teacher");
  theory_cmd->add_option("--k", theory_k, "cost exponent");
  theory_cmd->add_option("--trials", theory_trials, "Monte-Carlo trials");
  theory_cmd->add_option("--seed", theory_seed, "root seed");
  theory_cmd->add_option("--eps-list", theory_eps, "target errors (speedup)");
  theory_cmd->add_option("--fallback-alpha", fb_alpha, "alpha (fallback)");
  theory_cmd->add_option("--delta", fb_delta, "confidence level (fallback)");
  theory_cmd->add_flag("--agnostic", fb_agnostic, "agnostic fallback variant");
  theory_cmd->add_option("--noise", fb_noise, "label noise (agnostic)");

  // --- bad-example ---
  int bad_trials = 100, bad_rounds = 20;
  double bad_alpha = 0.9;
  std::uint64_t bad_seed = 1;
  std::size_t bad_tbatch = 1000;
  CLI::App* bad_cmd = app.add_subcommand(
      "bad-example", "wrong-heavy mix vs batch control on the 6-point instance");
  bad_cmd->add_option("--trials", bad_trials, "attempts");
  bad_cmd->add_option("--rounds", bad_rounds, "doubling rounds per attempt");
  bad_cmd->add_option("--alpha", bad_alpha, "wrong-example fraction");
  bad_cmd->add_option("--seed", bad_seed, "root seed");
  bad_cmd->add_option("--tbatch-samples", bad_tbatch, "control batch size");

  // --- curves ---
  std::string curves_archive, curves_out, curves_grid = "0,0.25,0.5,0.75,1";
  bool curves_svg = false;
  CLI::App* curves_cmd = app.add_subcommand(
      "curves", "recompute reports from a stored archive");
  curves_cmd->add_option("--archive", curves_archive, "archive directory")
      ->required();
  curves_cmd->add_option("--out", curves_out, "output directory")->required();
  curves_cmd->add_option("--grid", curves_grid, "normalized-time grid");
  curves_cmd->add_flag("--svg", curves_svg, "also draw the curves as SVG");

  // --- measure ---
  ExperimentConfig measure_config;
  std::string measure_clock = "sim", measure_f = "default";
  CLI::App* measure_cmd =
      app.add_subcommand("measure", "full-dataset training time");
  add_config_flags(measure_cmd, measure_config, measure_clock, measure_f);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      finish_config(run_config, run_clock, run_f);
      RunArchive archive;
      for (auto& e : run_experiment(run_config)) archive.append(std::move(e));
      print_summary(archive);
      if (!run_out.empty()) {
        archive.save(run_out);
        ReportOptions options;
        options.svg_plot = run_svg;
        emit_reports(archive, run_out, options);
        std::printf("reports written to %s\n", run_out.c_str());
      }
    } else if (*sweep_cmd) {
      finish_config(sweep_config, sweep_clock, sweep_f);
      std::vector<std::string> teachers;
      if (sweep_teachers.empty()) {
        teachers.push_back(sweep_config.teacher);
      } else {
        std::string token;
        for (char ch : sweep_teachers + ",") {
          if (ch == ',') {
            if (!token.empty()) teachers.push_back(token);
            token.clear();
          } else {
            token += ch;
          }
        }
      }
      RunArchive archive;
      for (auto& e : run_sweep(sweep_config, teachers, parse_list(sweep_alphas)))
        archive.append(std::move(e));
      print_summary(archive);
      if (!sweep_out.empty()) {
        archive.save(sweep_out);
        ReportOptions options;
        options.svg_plot = sweep_svg;
        emit_reports(archive, sweep_out, options);
        std::printf("reports written to %s\n", sweep_out.c_str());
      }
    } else if (*theory_cmd) {
      std::ofstream csv;
      if (!theory_out.empty()) csv.open(theory_out);
      if (theory_check == "speedup") {
        std::printf("%10s %14s %14s %14s %14s\n", "eps", "tct_samples",
                    "tct_time", "tbatch_samples", "tbatch_time");
        if (csv.is_open())
          csv << "eps,tct_samples_median,tct_log2_samples_mean,"
                 "tct_time_median,tbatch_samples,tbatch_time\n";
        for (double eps : parse_list(theory_eps)) {
          ThresholdExperiment r = run_threshold_experiment(
              eps, theory_alpha, theory_k, theory_seed, theory_trials);
          std::printf("%10.2g %14.1f %14.4g %14zu %14.4g\n", eps,
                      r.tct_samples_median, r.tct_time_median,
                      r.tbatch_samples, r.tbatch_time);
          if (csv.is_open())
            csv << eps << ',' << r.tct_samples_median << ','
                << r.tct_log2_samples_mean << ',' << r.tct_time_median << ','
                << r.tbatch_samples << ',' << r.tbatch_time << '\n';
        }
      } else if (theory_check == "claim1") {
        Claim1Stats stats =
            measure_claim1(theory_alpha, 6, 10, theory_trials, theory_seed);
        std::printf("%8s %10s %10s %10s\n", "round", "attempts", "achieved",
                    "frequency");
        if (csv.is_open()) csv << "round,attempts,achieved,frequency\n";
        for (std::size_t i = 0; i < stats.rounds.size(); ++i) {
          double freq = stats.attempts[i] == 0
                            ? 0.0
                            : static_cast<double>(stats.achieved[i]) /
                                  static_cast<double>(stats.attempts[i]);
          std::printf("%8d %10d %10d %10.4f\n", stats.rounds[i],
                      stats.attempts[i], stats.achieved[i], freq);
          if (csv.is_open())
            csv << stats.rounds[i] << ',' << stats.attempts[i] << ','
                << stats.achieved[i] << ',' << freq << '\n';
        }
      } else {
        FallbackParams params;
        params.alpha = fb_alpha;
        params.k = theory_k;
        params.delta = fb_delta;
        params.trials = theory_trials;
        params.seed = theory_seed;
        params.agnostic = fb_agnostic;
        params.label_noise = fb_noise;
        FallbackReport report = verify_fallback_bounds(params);
        std::printf("multiplier=%.4f slack=%.4f %s\n", report.multiplier,
                    report.slack, report.agnostic ? "(agnostic)" : "");
        std::printf("%8s %12s %16s %14s %12s\n", "m_T", "budget",
                    "extended_budget", "eps_quantile", "violations");
        if (csv.is_open())
          csv << "m_T,budget,extended_budget,eps_quantile,best_error,"
                 "violation_fraction\n";
        for (const FallbackBudgetReport& entry : report.budgets) {
          std::printf("%8zu %12.4g %16.4g %14.4f %12.4f\n", entry.m_T,
                      entry.budget, entry.extended_budget, entry.eps_quantile,
                      entry.violation_fraction);
          if (csv.is_open())
            csv << entry.m_T << ',' << entry.budget << ','
                << entry.extended_budget << ',' << entry.eps_quantile << ','
                << entry.best_error << ',' << entry.violation_fraction << '\n';
        }
      }
    } else if (*bad_cmd) {
      BadExampleReport report =
          run_bad_example(bad_trials, bad_rounds, bad_alpha, bad_seed,
                          bad_tbatch);
      std::printf("doubling-teacher success rate: %.4f\n",
                  report.tctbase_success_rate);
      std::printf("batch-control success rate:    %.4f\n",
                  report.tbatch_success_rate);
    } else if (*curves_cmd) {
      RunArchive archive = RunArchive::load(curves_archive);
      ReportOptions options;
      options.grid = parse_list(curves_grid);
      options.svg_plot = curves_svg;
      emit_reports(archive, curves_out, options);
      std::printf("reports written to %s\n", curves_out.c_str());
    } else if (*measure_cmd) {
      finish_config(measure_config, measure_clock, measure_f);
      Dataset dataset = resolve_dataset(measure_config);
      auto learner = make_learner(measure_config, dataset.num_classes);
      CostModel cost = learner->declared_cost();
      if (measure_config.cost_k > 0) cost.k = measure_config.cost_k;
      if (measure_config.cost_f >= 0)
        cost.f = static_cast<CostShape>(measure_config.cost_f);
      MeasureResult r = measure_full_training_time(
          *learner, dataset.train, measure_config.clock_mode, cost);
      std::printf("t_full=%.6g valid=%s runs:", r.t_full,
                  r.valid ? "yes" : "no");
      for (double v : r.runs) std::printf(" %.6g", v);
      std::printf("\n");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
