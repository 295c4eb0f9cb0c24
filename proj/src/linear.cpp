#include "tct/learners/linear.hpp"

#include <algorithm>
#include <cmath>

namespace tct {

namespace {

void check_shape(const LinearWeights& w, const LabeledExample& e) {
  if (e.features.size() != w.dim)
    throw ShapeError("linear model: feature dimension mismatch");
  if (e.label < 0 || e.label >= w.num_classes)
    throw ShapeError("linear model: label out of range");
}

std::vector<double> softmax_scores(const LinearWeights& w,
                                   std::span<const double> x) {
  std::vector<double> z(w.num_classes);
  for (int c = 0; c < w.num_classes; ++c) z[c] = w.score(c, x);
  double zmax = *std::max_element(z.begin(), z.end());
  double total = 0.0;
  for (double& v : z) {
    v = std::exp(v - zmax);
    total += v;
  }
  for (double& v : z) v /= total;
  return z;
}

int resolve_classes(const std::vector<LabeledExample>& examples,
                    int declared) {
  if (declared > 0) return declared;
  int k = 2;
  for (const auto& e : examples) k = std::max(k, e.label + 1);
  return k;
}

class LinearModel : public Model {
public:
  LinearModel(LinearWeights weights, bool probabilistic)
      : weights_(std::move(weights)), probabilistic_(probabilistic) {}

  int predict(std::span<const double> features) const override {
    int best = 0;
    double best_score = weights_.score(0, features);
    for (int c = 1; c < weights_.num_classes; ++c) {
      double s = weights_.score(c, features);
      if (s > best_score) {
        best_score = s;
        best = c;
      }
    }
    return best;
  }

  bool supports_probabilities() const override { return probabilistic_; }

  std::vector<double> predict_proba(
      std::span<const double> features) const override {
    if (!probabilistic_)
      throw UnsupportedLearner("linear SVM has no class probabilities");
    return softmax_scores(weights_, features);
  }

  const LinearWeights& weights() const { return weights_; }

private:
  LinearWeights weights_;
  bool probabilistic_;
};

LinearWeights zero_weights(std::size_t dim, int k) {
  LinearWeights w;
  w.dim = dim;
  w.num_classes = k;
  w.w.assign(static_cast<std::size_t>(k) * (dim + 1), 0.0);
  return w;
}

void apply_logistic_step(LinearWeights& w,
                         const std::vector<LabeledExample>& batch, double lr) {
  std::vector<double> g = logistic_gradient(w, batch);
  for (std::size_t i = 0; i < w.w.size(); ++i) w.w[i] -= lr * g[i];
}

void apply_hinge_step(LinearWeights& w,
                      const std::vector<LabeledExample>& batch, double lr) {
  // One-vs-rest hinge subgradient, averaged over the batch.
  std::vector<double> g(w.w.size(), 0.0);
  for (const auto& e : batch) {
    check_shape(w, e);
    for (int c = 0; c < w.num_classes; ++c) {
      double y = e.label == c ? 1.0 : -1.0;
      if (y * w.score(c, e.features) < 1.0) {
        double* row = g.data() + static_cast<std::size_t>(c) * (w.dim + 1);
        for (std::size_t j = 0; j < w.dim; ++j) row[j] -= y * e.features[j];
        row[w.dim] -= y;
      }
    }
  }
  double scale = lr / static_cast<double>(batch.size());
  for (std::size_t i = 0; i < w.w.size(); ++i) w.w[i] -= scale * g[i];
}

}  // namespace

double LinearWeights::score(int c, std::span<const double> x) const {
  const double* row = w.data() + static_cast<std::size_t>(c) * (dim + 1);
  double s = row[dim];
  for (std::size_t j = 0; j < dim; ++j) s += row[j] * x[j];
  return s;
}

double logistic_loss(const LinearWeights& weights,
                     const std::vector<LabeledExample>& batch) {
  double total = 0.0;
  for (const auto& e : batch) {
    check_shape(weights, e);
    std::vector<double> z(weights.num_classes);
    for (int c = 0; c < weights.num_classes; ++c)
      z[c] = weights.score(c, e.features);
    double zmax = *std::max_element(z.begin(), z.end());
    double lse = 0.0;
    for (double v : z) lse += std::exp(v - zmax);
    total += std::log(lse) + zmax - z[e.label];
  }
  return total / static_cast<double>(batch.size());
}

std::vector<double> logistic_gradient(
    const LinearWeights& weights, const std::vector<LabeledExample>& batch) {
  std::vector<double> g(weights.w.size(), 0.0);
  for (const auto& e : batch) {
    check_shape(weights, e);
    std::vector<double> p = softmax_scores(weights, e.features);
    for (int c = 0; c < weights.num_classes; ++c) {
      double coef = p[c] - (e.label == c ? 1.0 : 0.0);
      double* row =
          g.data() + static_cast<std::size_t>(c) * (weights.dim + 1);
      for (std::size_t j = 0; j < weights.dim; ++j)
        row[j] += coef * e.features[j];
      row[weights.dim] += coef;
    }
  }
  double inv = 1.0 / static_cast<double>(batch.size());
  for (double& v : g) v *= inv;
  return g;
}

ModelPtr LogisticRegressionLearner::train(
    const std::vector<LabeledExample>& examples) const {
  std::size_t dim = examples.empty() ? 0 : examples.front().features.size();
  LinearWeights w = zero_weights(dim, resolve_classes(examples, num_classes_));
  if (!examples.empty())
    for (int e = 0; e < epochs_; ++e) apply_logistic_step(w, examples, lr_);
  return std::make_shared<LinearModel>(std::move(w), true);
}

ModelPtr LogisticRegressionLearner::partial_update(
    const Model& model, const std::vector<LabeledExample>& batch) const {
  const auto& lm = dynamic_cast<const LinearModel&>(model);
  LinearWeights w = lm.weights();
  if (w.dim == 0 && !batch.empty())  // first update fixes the shape
    w = zero_weights(batch.front().features.size(),
                     std::max(w.num_classes, resolve_classes(batch, num_classes_)));
  if (!batch.empty()) apply_logistic_step(w, batch, lr_);
  return std::make_shared<LinearModel>(std::move(w), true);
}

ModelPtr LinearSvmLearner::train(
    const std::vector<LabeledExample>& examples) const {
  std::size_t dim = examples.empty() ? 0 : examples.front().features.size();
  LinearWeights w = zero_weights(dim, resolve_classes(examples, num_classes_));
  if (!examples.empty())
    for (int e = 0; e < epochs_; ++e) apply_hinge_step(w, examples, lr_);
  return std::make_shared<LinearModel>(std::move(w), false);
}

ModelPtr LinearSvmLearner::partial_update(
    const Model& model, const std::vector<LabeledExample>& batch) const {
  const auto& lm = dynamic_cast<const LinearModel&>(model);
  LinearWeights w = lm.weights();
  if (w.dim == 0 && !batch.empty())  // first update fixes the shape
    w = zero_weights(batch.front().features.size(),
                     std::max(w.num_classes, resolve_classes(batch, num_classes_)));
  if (!batch.empty()) apply_hinge_step(w, batch, lr_);
  return std::make_shared<LinearModel>(std::move(w), false);
}

}  // namespace tct
