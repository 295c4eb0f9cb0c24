#include "tct/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tct {

AccuracyEstimate pooled_accuracy(const AccuracyEstimate& e1,
                                 const AccuracyEstimate& e2) {
  if (e1.n < 1) throw std::invalid_argument("pooled_accuracy: n1 >= 1");
  double n1 = static_cast<double>(e1.n);
  double n2 = static_cast<double>(e2.n);
  std::size_t n = e1.n + e2.n;
  return {(e1.acc * n1 + e2.acc * n2) / (n1 + n2), n};
}

double ci_lower_95(const AccuracyEstimate& e, double z) {
  if (e.n < 1) throw std::invalid_argument("ci_lower_95: n >= 1");
  double lower =
      e.acc - z * std::sqrt(e.acc * (1.0 - e.acc) / static_cast<double>(e.n));
  return std::clamp(lower, 0.0, 1.0);
}

WinLoss win_loss_test(double acc_a, double acc_b, std::size_t m_test) {
  if (m_test < 1) throw std::invalid_argument("win_loss_test: m_test >= 1");
  double m = static_cast<double>(m_test);
  double threshold =
      1.645 * std::sqrt(acc_a * (1.0 - acc_a) / m + acc_b * (1.0 - acc_b) / m);
  if (std::abs(acc_a - acc_b) - threshold > 0.0)
    return acc_a > acc_b ? WinLoss::a_wins : WinLoss::b_wins;
  return WinLoss::tie;
}

double accuracy_at(const CurveInput& input, double elapsed) {
  const TeacherRun& run = *input.run;
  double acc = input.baseline_acc;
  bool found = false;
  for (const RoundRecord& r : run.rounds) {
    if (r.elapsed_end > elapsed) break;
    if (std::isnan(r.test_accuracy)) continue;
    if (run.model_rule == ModelRule::best_estimator) {
      if (r.is_best) {
        acc = r.test_accuracy;
        found = true;
      }
    } else {
      acc = r.test_accuracy;
      found = true;
    }
  }
  (void)found;
  return acc;
}

std::vector<CurvePoint> normalized_curve(std::span<const CurveInput> runs,
                                         std::span<const double> grid) {
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (double t : grid) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const CurveInput& input : runs) {
      sum += accuracy_at(input, t * input.t_full);
      ++n;
    }
    out.push_back({t, n == 0 ? 0.0 : sum / static_cast<double>(n), n});
  }
  return out;
}

}  // namespace tct
