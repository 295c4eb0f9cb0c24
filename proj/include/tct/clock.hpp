#pragma once

#include <chrono>
#include <cstddef>

namespace tct {

enum class ClockMode { wall, simulated };

/// Shape of the sublinear factor f in the training-cost model m^k * f(m).
enum class CostShape { unit, log2 };

double cost_shape_value(CostShape f, std::size_t m);

/// Simulated cost of training on m examples: m^k * f(m). k in {1,2,3}.
double simulated_train_cost(std::size_t m, int k, CostShape f);

struct CostModel {
  int k = 1;
  CostShape f = CostShape::unit;
  double c_clf = 0.0;  // per-example classification cost (simulated mode)
};

/// Dual clock. Simulated mode charges m^k*f(m) per training call and
/// c_clf per classified example, which makes budgets deterministic and
/// replayable; wall mode reads real elapsed seconds and ignores charges.
class CostClock {
public:
  explicit CostClock(ClockMode mode, CostModel cost = {});

  void charge_training(std::size_t m);
  void charge_classification(std::size_t n);

  double elapsed() const;

  ClockMode mode() const { return mode_; }
  const CostModel& cost() const { return cost_; }

private:
  ClockMode mode_;
  CostModel cost_;
  double sim_elapsed_ = 0.0;
  std::chrono::steady_clock::time_point wall_start_;
};

struct TimeBudget {
  double limit;
  explicit TimeBudget(double t);
};

}  // namespace tct
