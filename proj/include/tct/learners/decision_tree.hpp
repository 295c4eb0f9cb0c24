#pragma once

#include <cstdint>
#include <vector>

#include "tct/model.hpp"

namespace tct {

/// Greedy axis-aligned tree on Gini impurity. Leaves predict the majority
/// class and expose class frequencies as probabilities. Defaults follow
/// the interpretable-tree settings (min_samples_split=30, max_depth=5).
class DecisionTreeLearner : public Learner {
public:
  explicit DecisionTreeLearner(int min_samples_split = 30, int max_depth = 5,
                               int num_classes = 0,
                               CostModel cost = {1, CostShape::log2, 0.0})
      : min_samples_split_(min_samples_split),
        max_depth_(max_depth),
        num_classes_(num_classes),
        cost_(cost) {}

  ModelPtr train(const std::vector<LabeledExample>& examples) const override;
  CostModel declared_cost() const override { return cost_; }
  std::string id() const override { return "tree"; }

private:
  int min_samples_split_;
  int max_depth_;
  int num_classes_;  // 0 = infer from the data
  CostModel cost_;
};

/// Bootstrap ensemble of the above, majority vote, averaged probabilities.
class BaggedTreesLearner : public Learner {
public:
  BaggedTreesLearner(int num_trees, std::uint64_t seed,
                     int min_samples_split = 30, int max_depth = 5,
                     int num_classes = 0,
                     CostModel cost = {1, CostShape::log2, 0.0})
      : num_trees_(num_trees),
        seed_(seed),
        min_samples_split_(min_samples_split),
        max_depth_(max_depth),
        num_classes_(num_classes),
        cost_(cost) {}

  ModelPtr train(const std::vector<LabeledExample>& examples) const override;
  CostModel declared_cost() const override { return cost_; }
  std::string id() const override { return "bagged-trees"; }

private:
  int num_trees_;
  std::uint64_t seed_;
  int min_samples_split_;
  int max_depth_;
  int num_classes_;
  CostModel cost_;
};

}  // namespace tct
