#pragma once

#include <vector>

#include "tct/model.hpp"

namespace tct {

struct ThresholdExample {
  double x = 0.0;
  int y = 0;  // +1 or -1
};

/// One-dimensional threshold rule: predicts +1 iff x >= v.
struct ThresholdHypothesis {
  double v = 0.0;
  int predict(double x) const { return x >= v ? +1 : -1; }
};

/// ERM over threshold rules: minimizes sample error via a sorted sweep
/// over all cut positions. In the realizable case the returned v is the
/// midpoint of the uncertainty interval (max negative x, min positive x];
/// constant-label inputs map to the -inf / +inf sentinel thresholds.
ThresholdHypothesis threshold_erm(std::vector<ThresholdExample> train);

/// Black-box adapter over threshold_erm: 1-d features, labels {0,1} with
/// 1 standing for the +1 side.
class ThresholdLearner : public Learner {
public:
  explicit ThresholdLearner(CostModel cost = {1, CostShape::unit, 0.0})
      : cost_(cost) {}

  ModelPtr train(const std::vector<LabeledExample>& examples) const override;
  CostModel declared_cost() const override { return cost_; }
  std::string id() const override { return "threshold"; }

private:
  CostModel cost_;
};

}  // namespace tct
