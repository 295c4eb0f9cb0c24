#include "tct/clock.hpp"

#include <cmath>
#include <stdexcept>

namespace tct {

double cost_shape_value(CostShape f, std::size_t m) {
  switch (f) {
    case CostShape::unit:
      return 1.0;
    case CostShape::log2:
      return std::log2(static_cast<double>(m) + 2.0);
  }
  return 1.0;
}

double simulated_train_cost(std::size_t m, int k, CostShape f) {
  if (k < 1 || k > 3)
    throw std::invalid_argument("simulated_train_cost: k must be in {1,2,3}");
  if (m == 0) return 0.0;
  double md = static_cast<double>(m);
  double p = md;
  for (int i = 1; i < k; ++i) p *= md;
  return p * cost_shape_value(f, m);
}

CostClock::CostClock(ClockMode mode, CostModel cost)
    : mode_(mode), cost_(cost) {
  if (cost_.c_clf < 0.0)
    throw std::invalid_argument("CostClock: c_clf must be non-negative");
  if (cost_.k < 1 || cost_.k > 3)
    throw std::invalid_argument("CostClock: k must be in {1,2,3}");
  if (mode_ == ClockMode::wall) wall_start_ = std::chrono::steady_clock::now();
}

void CostClock::charge_training(std::size_t m) {
  if (mode_ == ClockMode::simulated)
    sim_elapsed_ += simulated_train_cost(m, cost_.k, cost_.f);
}

void CostClock::charge_classification(std::size_t n) {
  if (mode_ == ClockMode::simulated)
    sim_elapsed_ += cost_.c_clf * static_cast<double>(n);
}

double CostClock::elapsed() const {
  if (mode_ == ClockMode::simulated) return sim_elapsed_;
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       wall_start_)
      .count();
}

TimeBudget::TimeBudget(double t) : limit(t) {
  if (!(t > 0.0)) throw std::invalid_argument("TimeBudget: T must be > 0");
}

}  // namespace tct
