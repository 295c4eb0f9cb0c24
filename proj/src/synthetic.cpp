#include "tct/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tct {

SyntheticDistribution SyntheticDistribution::threshold_uniform(double v_star,
                                                               double lo,
                                                               double hi) {
  if (!(lo < hi)) throw std::invalid_argument("threshold_uniform: lo < hi");
  if (!(v_star > lo && v_star < hi))
    throw std::invalid_argument("threshold_uniform: v* must be interior");
  SyntheticDistribution d;
  d.kind_ = DistributionKind::threshold_uniform;
  d.v_star_ = v_star;
  d.lo_ = lo;
  d.hi_ = hi;
  d.num_classes_ = 2;
  d.dim_ = 1;
  return d;
}

SyntheticDistribution SyntheticDistribution::finite_weighted(
    std::vector<double> points, std::vector<double> weights,
    std::vector<int> labels, int num_classes) {
  if (points.empty() || points.size() != weights.size() ||
      points.size() != labels.size())
    throw std::invalid_argument("finite_weighted: mismatched sizes");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("finite_weighted: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("finite_weighted: weights must sum to 1");
  SyntheticDistribution d;
  d.kind_ = DistributionKind::finite_weighted;
  d.points_ = std::move(points);
  d.weights_ = std::move(weights);
  d.labels_ = std::move(labels);
  d.num_classes_ = num_classes;
  d.dim_ = 1;
  d.cumulative_.resize(d.weights_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < d.weights_.size(); ++i) {
    acc += d.weights_[i];
    d.cumulative_[i] = acc;
  }
  d.cumulative_.back() = 1.0;
  return d;
}

SyntheticDistribution SyntheticDistribution::gaussian_2class(
    std::vector<double> mean0, std::vector<double> mean1, double sigma) {
  if (mean0.size() != mean1.size() || mean0.empty())
    throw std::invalid_argument("gaussian_2class: mismatched means");
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_2class: sigma > 0");
  SyntheticDistribution d;
  d.kind_ = DistributionKind::gaussian_2class;
  d.dim_ = mean0.size();
  d.mean0_ = std::move(mean0);
  d.mean1_ = std::move(mean1);
  d.sigma_ = sigma;
  d.num_classes_ = 2;
  return d;
}

std::size_t SyntheticDistribution::sample_point_index(Rng& rng) const {
  if (kind_ != DistributionKind::finite_weighted)
    throw std::logic_error("sample_point_index: not a finite distribution");
  double u = rng.uniform01();
  auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

LabeledExample SyntheticDistribution::sample(Rng& rng) const {
  switch (kind_) {
    case DistributionKind::threshold_uniform: {
      double x = lo_ + rng.uniform01() * (hi_ - lo_);
      return {{x}, x >= v_star_ ? 1 : 0};
    }
    case DistributionKind::finite_weighted: {
      std::size_t i = sample_point_index(rng);
      return {{points_[i]}, labels_[i]};
    }
    case DistributionKind::gaussian_2class: {
      int label = rng.uniform01() < 0.5 ? 0 : 1;
      const auto& mean = label == 0 ? mean0_ : mean1_;
      LabeledExample e;
      e.features.resize(dim_);
      for (std::size_t j = 0; j < dim_; ++j)
        e.features[j] = mean[j] + sigma_ * rng.normal();
      e.label = label;
      return e;
    }
  }
  throw std::logic_error("sample: unknown kind");
}

double SyntheticDistribution::cdf(double x) const {
  if (kind_ != DistributionKind::threshold_uniform)
    throw std::logic_error("cdf: only defined for the threshold marginal");
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  return (x - lo_) / (hi_ - lo_);
}

double SyntheticDistribution::threshold_true_error(double v) const {
  return std::abs(cdf(v) - cdf(v_star_));
}

ExamplePool SyntheticDistribution::make_pool(std::size_t m,
                                             std::uint64_t seed) const {
  Rng rng = Rng(seed).substream("synthetic-pool");
  std::vector<LabeledExample> examples;
  examples.reserve(m);
  for (std::size_t i = 0; i < m; ++i) examples.push_back(sample(rng));
  return ExamplePool(std::move(examples), num_classes_, seed);
}

}  // namespace tct
