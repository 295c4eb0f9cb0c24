#pragma once

#include <vector>

#include "tct/model.hpp"

namespace tct {

/// Dense weight block for a linear classifier: num_classes rows of
/// (dim + 1) coefficients, bias last.
struct LinearWeights {
  std::size_t dim = 0;
  int num_classes = 0;
  std::vector<double> w;  // row-major [class][dim+1]

  double& at(int c, std::size_t j) { return w[c * (dim + 1) + j]; }
  double at(int c, std::size_t j) const { return w[c * (dim + 1) + j]; }
  double score(int c, std::span<const double> x) const;
};

/// Mean multinomial log loss of `weights` on `batch`.
double logistic_loss(const LinearWeights& weights,
                     const std::vector<LabeledExample>& batch);

/// Analytic gradient of logistic_loss, flattened like LinearWeights::w.
std::vector<double> logistic_gradient(const LinearWeights& weights,
                                      const std::vector<LabeledExample>& batch);

/// Multinomial logistic regression trained by full-batch gradient descent
/// from zero weights; exposes softmax probabilities. partial_update runs
/// a single mini-batch step.
class LogisticRegressionLearner : public Learner {
public:
  explicit LogisticRegressionLearner(int epochs = 100, double lr = 0.5,
                                     int num_classes = 0,
                                     CostModel cost = {1, CostShape::unit, 0.0})
      : epochs_(epochs), lr_(lr), num_classes_(num_classes), cost_(cost) {}

  ModelPtr train(const std::vector<LabeledExample>& examples) const override;
  bool supports_partial_update() const override { return true; }
  ModelPtr partial_update(const Model& model,
                          const std::vector<LabeledExample>& batch) const override;
  CostModel declared_cost() const override { return cost_; }
  std::string id() const override { return "logistic"; }

private:
  int epochs_;
  double lr_;
  int num_classes_;
  CostModel cost_;
};

/// One-vs-rest linear SVM trained by full-batch hinge subgradient descent
/// from zero weights. No probability support. partial_update runs a
/// single mini-batch step.
class LinearSvmLearner : public Learner {
public:
  explicit LinearSvmLearner(int epochs = 100, double lr = 0.5,
                            int num_classes = 0,
                            CostModel cost = {1, CostShape::unit, 0.0})
      : epochs_(epochs), lr_(lr), num_classes_(num_classes), cost_(cost) {}

  ModelPtr train(const std::vector<LabeledExample>& examples) const override;
  bool supports_partial_update() const override { return true; }
  ModelPtr partial_update(const Model& model,
                          const std::vector<LabeledExample>& batch) const override;
  CostModel declared_cost() const override { return cost_; }
  std::string id() const override { return "svm"; }

private:
  int epochs_;
  double lr_;
  int num_classes_;
  CostModel cost_;
};

}  // namespace tct
