#pragma once

#include <cstdint>
#include <vector>

#include "tct/example.hpp"
#include "tct/rng.hpp"

namespace tct {

enum class DistributionKind { threshold_uniform, finite_weighted, gaussian_2class };

/// Label source with unlimited sampling, standing in for the unknown
/// distribution the theory section reasons about. Three built-in shapes:
///  - threshold_uniform: x ~ U[lo,hi], label 1 iff x >= v* (realizable);
///  - finite_weighted: weighted points with fixed labels (weights sum to 1);
///  - gaussian_2class: balanced spherical Gaussians around two means.
class SyntheticDistribution {
public:
  static SyntheticDistribution threshold_uniform(double v_star, double lo = 0.0,
                                                 double hi = 1.0);
  static SyntheticDistribution finite_weighted(std::vector<double> points,
                                               std::vector<double> weights,
                                               std::vector<int> labels,
                                               int num_classes);
  static SyntheticDistribution gaussian_2class(std::vector<double> mean0,
                                               std::vector<double> mean1,
                                               double sigma);

  DistributionKind kind() const { return kind_; }
  int num_classes() const { return num_classes_; }
  std::size_t dim() const { return dim_; }

  LabeledExample sample(Rng& rng) const;

  /// Finite kind only: index of the next sampled point.
  std::size_t sample_point_index(Rng& rng) const;
  std::size_t num_points() const { return points_.size(); }
  double point_value(std::size_t i) const { return points_[i]; }
  double point_weight(std::size_t i) const { return weights_[i]; }
  int point_label(std::size_t i) const { return labels_[i]; }

  /// Threshold kind only.
  double v_star() const { return v_star_; }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  /// Mass of the marginal below x.
  double cdf(double x) const;
  /// True error of the threshold rule "label 1 iff x >= v" (closed form).
  double threshold_true_error(double v) const;

  /// m i.i.d. samples packaged as a without-replacement pool.
  ExamplePool make_pool(std::size_t m, std::uint64_t seed) const;

private:
  SyntheticDistribution() = default;

  DistributionKind kind_ = DistributionKind::threshold_uniform;
  int num_classes_ = 2;
  std::size_t dim_ = 1;
  // threshold_uniform
  double v_star_ = 0.5, lo_ = 0.0, hi_ = 1.0;
  // finite_weighted
  std::vector<double> points_, weights_, cumulative_;
  std::vector<int> labels_;
  // gaussian_2class
  std::vector<double> mean0_, mean1_;
  double sigma_ = 1.0;
};

}  // namespace tct
