#include "tct/learners/threshold.hpp"

#include <algorithm>
#include <limits>

namespace tct {

ThresholdHypothesis threshold_erm(std::vector<ThresholdExample> train) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (train.empty()) return {-kInf};
  std::sort(train.begin(), train.end(),
            [](const ThresholdExample& a, const ThresholdExample& b) {
              return a.x < b.x;
            });

  // Sweep cut positions left to right. At v = -inf everything is
  // predicted +1, so the error is the negative count; moving the cut past
  // a group of equal x flips that group to -1.
  std::size_t n = train.size();
  long err = 0;
  for (const auto& e : train)
    if (e.y == -1) ++err;

  long best_err = err;
  double best_v = -kInf;

  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    long pos = 0, neg = 0;
    while (j < n && train[j].x == train[i].x) {
      if (train[j].y == +1)
        ++pos;
      else
        ++neg;
      ++j;
    }
    err += pos - neg;
    double v = j < n ? (train[i].x + train[j].x) / 2.0 : kInf;
    if (err < best_err) {
      best_err = err;
      best_v = v;
    }
    i = j;
  }
  return {best_v};
}

namespace {

class ThresholdModel : public Model {
public:
  explicit ThresholdModel(ThresholdHypothesis h) : h_(h) {}
  int predict(std::span<const double> features) const override {
    return h_.predict(features[0]) == +1 ? 1 : 0;
  }

private:
  ThresholdHypothesis h_;
};

}  // namespace

ModelPtr ThresholdLearner::train(
    const std::vector<LabeledExample>& examples) const {
  std::vector<ThresholdExample> train;
  train.reserve(examples.size());
  for (const auto& e : examples)
    train.push_back({e.features[0], e.label == 1 ? +1 : -1});
  return std::make_shared<ThresholdModel>(threshold_erm(std::move(train)));
}

}  // namespace tct
