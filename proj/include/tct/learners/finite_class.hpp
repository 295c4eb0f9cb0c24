#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tct/model.hpp"

namespace tct {

/// A finite set of classifiers over a finite point set. Hypothesis h
/// assigns labels[h][p] to point p.
struct FiniteHypothesisClass {
  std::vector<double> points;
  std::vector<std::vector<int>> labels;  // [hypothesis][point]
  std::vector<std::string> names;        // optional, aligned with labels
  int num_classes = 2;

  std::size_t num_points() const { return points.size(); }
  std::size_t num_hypotheses() const { return labels.size(); }
  void validate() const;
  /// Index of the point with value x (exact match up to 1e-9).
  std::size_t point_index(double x) const;
};

/// ERM by exhaustive scan; ties break to the lowest index.
std::size_t finite_erm(const FiniteHypothesisClass& cls,
                       const std::vector<std::pair<std::size_t, int>>& train);

/// Same minimizer over a sample-count matrix counts[point][class].
std::size_t finite_erm_counts(
    const FiniteHypothesisClass& cls,
    const std::vector<std::vector<std::uint64_t>>& counts);

/// Black-box adapter: features hold the point value, labels are class ids.
class FiniteClassLearner : public Learner {
public:
  explicit FiniteClassLearner(FiniteHypothesisClass cls,
                              CostModel cost = {1, CostShape::unit, 0.0});

  ModelPtr train(const std::vector<LabeledExample>& examples) const override;
  CostModel declared_cost() const override { return cost_; }
  std::string id() const override { return "finite-erm"; }

  const FiniteHypothesisClass& hypothesis_class() const { return *cls_; }

private:
  std::shared_ptr<const FiniteHypothesisClass> cls_;
  CostModel cost_;
};

/// Model wrapper exposing which hypothesis was chosen.
class FiniteClassModel : public Model {
public:
  FiniteClassModel(std::shared_ptr<const FiniteHypothesisClass> cls,
                   std::size_t index)
      : cls_(std::move(cls)), index_(index) {}
  int predict(std::span<const double> features) const override;
  std::size_t hypothesis_index() const { return index_; }

private:
  std::shared_ptr<const FiniteHypothesisClass> cls_;
  std::size_t index_;
};

}  // namespace tct
