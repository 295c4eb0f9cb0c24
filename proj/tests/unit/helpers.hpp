#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "tct/example.hpp"
#include "tct/model.hpp"
#include "tct/rng.hpp"

namespace tct::testing {

/// Model defined by an arbitrary predict function.
class LambdaModel : public Model {
public:
  using Fn = std::function<int(std::span<const double>)>;
  using ProbaFn = std::function<std::vector<double>(std::span<const double>)>;

  explicit LambdaModel(Fn fn) : fn_(std::move(fn)) {}
  LambdaModel(Fn fn, ProbaFn proba)
      : fn_(std::move(fn)), proba_(std::move(proba)) {}

  int predict(std::span<const double> features) const override {
    return fn_(features);
  }
  bool supports_probabilities() const override { return proba_ != nullptr; }
  std::vector<double> predict_proba(
      std::span<const double> features) const override {
    if (!proba_) return Model::predict_proba(features);
    return proba_(features);
  }

private:
  Fn fn_;
  ProbaFn proba_;
};

/// Learner that ignores the training data and always hands back the same
/// model; handy for pinning teacher structure independently of learning.
class FixedModelLearner : public Learner {
public:
  explicit FixedModelLearner(ModelPtr model, CostModel cost = {})
      : model_(std::move(model)), cost_(cost) {}

  ModelPtr train(const std::vector<LabeledExample>&) const override {
    return model_;
  }
  CostModel declared_cost() const override { return cost_; }
  std::string id() const override { return "fixed"; }

private:
  ModelPtr model_;
  CostModel cost_;
};

/// Learner that replays a scripted sequence of models, one per train call.
class ScriptedLearner : public Learner {
public:
  explicit ScriptedLearner(std::vector<ModelPtr> models, CostModel cost = {})
      : models_(std::move(models)), cost_(cost) {}

  ModelPtr train(const std::vector<LabeledExample>&) const override {
    ModelPtr next = models_[std::min(cursor_, models_.size() - 1)];
    ++cursor_;
    return next;
  }
  CostModel declared_cost() const override { return cost_; }
  std::string id() const override { return "scripted"; }

private:
  std::vector<ModelPtr> models_;
  CostModel cost_;
  mutable std::size_t cursor_ = 0;
};

/// Pool of n one-dimensional examples x = 0..n-1 with pseudo-random
/// binary labels (seeded), for structural teacher tests.
inline ExamplePool make_indexed_pool(std::size_t n, std::uint64_t seed,
                                     double positive_rate = 0.5) {
  Rng rng = Rng(seed).substream("test-pool-labels");
  std::vector<LabeledExample> examples;
  examples.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    examples.push_back({{static_cast<double>(i)},
                        rng.uniform01() < positive_rate ? 1 : 0});
  return ExamplePool(std::move(examples), 2, seed);
}

}  // namespace tct::testing
