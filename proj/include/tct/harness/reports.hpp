#pragma once

#include <string>
#include <vector>

#include "tct/harness/experiment.hpp"
#include "tct/stats.hpp"

namespace tct {

struct ReportOptions {
  std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  bool svg_plot = false;
};

/// Curve rows in the file layout: teacher,learner,dataset,t,mean_acc,n_runs.
struct CurveRow {
  std::string teacher;
  std::string learner;
  std::string dataset;
  CurvePoint point;
};

struct WinLossRow {
  std::string learner;
  std::string dataset;
  std::string teacher_a;
  std::string teacher_b;
  double acc_a = 0.0;
  double acc_b = 0.0;
  std::size_t m_test = 0;
  WinLoss result = WinLoss::tie;
};

/// Pure functions of the archive; emit_reports writes exactly these.
std::vector<CurveRow> curve_table(const RunArchive& archive,
                                  const std::vector<double>& grid);
std::vector<WinLossRow> win_loss_table(const RunArchive& archive);

/// Writes trace.csv, curves.csv, winloss.csv and config.json under
/// out_dir (plus curves.svg when requested).
void emit_reports(const RunArchive& archive, const std::string& out_dir,
                  const ReportOptions& options = {});

}  // namespace tct
