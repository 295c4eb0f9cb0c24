#include "tct/learners/finite_class.hpp"

#include <cmath>
#include <stdexcept>

namespace tct {

void FiniteHypothesisClass::validate() const {
  if (points.empty() || labels.empty())
    throw std::invalid_argument("FiniteHypothesisClass: empty class");
  for (const auto& h : labels) {
    if (h.size() != points.size())
      throw std::invalid_argument(
          "FiniteHypothesisClass: hypothesis must label every point");
    for (int y : h)
      if (y < 0 || y >= num_classes)
        throw std::invalid_argument("FiniteHypothesisClass: label range");
  }
}

std::size_t FiniteHypothesisClass::point_index(double x) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (std::abs(points[i] - x) <= 1e-9) return i;
  throw std::invalid_argument("point_index: value not in the point set");
}

std::size_t finite_erm(const FiniteHypothesisClass& cls,
                       const std::vector<std::pair<std::size_t, int>>& train) {
  std::size_t best = 0;
  std::uint64_t best_err = UINT64_MAX;
  for (std::size_t h = 0; h < cls.num_hypotheses(); ++h) {
    std::uint64_t err = 0;
    for (const auto& [p, y] : train)
      if (cls.labels[h][p] != y) ++err;
    if (err < best_err) {
      best_err = err;
      best = h;
    }
  }
  return best;
}

std::size_t finite_erm_counts(
    const FiniteHypothesisClass& cls,
    const std::vector<std::vector<std::uint64_t>>& counts) {
  std::size_t best = 0;
  std::uint64_t best_err = UINT64_MAX;
  for (std::size_t h = 0; h < cls.num_hypotheses(); ++h) {
    std::uint64_t err = 0;
    for (std::size_t p = 0; p < cls.num_points(); ++p)
      for (int y = 0; y < cls.num_classes; ++y)
        if (cls.labels[h][p] != y) err += counts[p][y];
    if (err < best_err) {
      best_err = err;
      best = h;
    }
  }
  return best;
}

int FiniteClassModel::predict(std::span<const double> features) const {
  return cls_->labels[index_][cls_->point_index(features[0])];
}

FiniteClassLearner::FiniteClassLearner(FiniteHypothesisClass cls,
                                       CostModel cost)
    : cls_(std::make_shared<const FiniteHypothesisClass>(std::move(cls))),
      cost_(cost) {
  cls_->validate();
}

ModelPtr FiniteClassLearner::train(
    const std::vector<LabeledExample>& examples) const {
  std::vector<std::pair<std::size_t, int>> train;
  train.reserve(examples.size());
  for (const auto& e : examples)
    train.emplace_back(cls_->point_index(e.features[0]), e.label);
  return std::make_shared<FiniteClassModel>(cls_, finite_erm(*cls_, train));
}

}  // namespace tct
