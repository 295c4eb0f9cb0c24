#pragma once

#include <span>
#include <vector>

#include "tct/trace.hpp"

namespace tct {

struct AccuracyEstimate {
  double acc = 0.0;
  std::size_t n = 0;
};

/// Sample-size weighted mean of two estimates; the second may be empty.
AccuracyEstimate pooled_accuracy(const AccuracyEstimate& e1,
                                 const AccuracyEstimate& e2);

/// Lower limit of the normal-approximation confidence interval,
/// acc - z*sqrt(acc(1-acc)/n), clipped to [0,1].
double ci_lower_95(const AccuracyEstimate& e, double z = 1.96);

enum class WinLoss { a_wins, b_wins, tie };

/// Two-proportion significance test at 95% one-sided confidence:
/// the higher side wins iff
/// |accA-accB| - 1.645*sqrt(accA(1-accA)/m + accB(1-accB)/m) > 0.
WinLoss win_loss_test(double acc_a, double acc_b, std::size_t m_test);

struct CurvePoint {
  double t = 0.0;
  double mean_acc = 0.0;
  std::size_t n_runs = 0;
};

/// One run's contribution to a normalized-time curve: the trace, the
/// full-training time that normalizes its clock, and the accuracy a
/// model-less teacher falls back to (majority class).
struct CurveInput {
  const TeacherRun* run = nullptr;
  double t_full = 0.0;
  double baseline_acc = 0.0;
};

/// Test accuracy of the model `run` would return if stopped at `elapsed`,
/// per its model rule; baseline when no model exists yet.
double accuracy_at(const CurveInput& input, double elapsed);

/// Mean accuracy across runs at each grid point t, evaluating every run
/// at t * t_full of its own dataset.
std::vector<CurvePoint> normalized_curve(std::span<const CurveInput> runs,
                                         std::span<const double> grid);

}  // namespace tct
