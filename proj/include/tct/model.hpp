#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tct/clock.hpp"
#include "tct/errors.hpp"
#include "tct/example.hpp"

namespace tct {

/// Trained classifier. Immutable after construction; shareable across
/// threads for prediction.
class Model {
public:
  virtual ~Model() = default;

  virtual int predict(std::span<const double> features) const = 0;

  virtual bool supports_probabilities() const { return false; }

  /// Probability vector over the k classes; sums to 1 and argmax agrees
  /// with predict. Only valid when supports_probabilities().
  virtual std::vector<double> predict_proba(
      std::span<const double> features) const {
    (void)features;
    throw UnsupportedLearner("model does not expose class probabilities");
  }
};

using ModelPtr = std::shared_ptr<const Model>;

/// Black-box training procedure. train() must be deterministic given the
/// learner's construction-time seed.
class Learner {
public:
  virtual ~Learner() = default;

  virtual ModelPtr train(const std::vector<LabeledExample>& examples) const = 0;

  virtual bool supports_partial_update() const { return false; }

  /// One mini-batch update starting from `model` (the partial_fit analogue).
  virtual ModelPtr partial_update(const Model& model,
                                  const std::vector<LabeledExample>& batch) const {
    (void)model;
    (void)batch;
    throw UnsupportedLearner("learner does not support partial updates");
  }

  /// Declared parameters for the simulated training-cost model.
  virtual CostModel declared_cost() const { return {}; }

  virtual std::string id() const = 0;
};

}  // namespace tct
