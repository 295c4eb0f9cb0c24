#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tct/rng.hpp"

namespace tct {

struct LabeledExample {
  std::vector<double> features;
  int label = 0;
};

/// Result of one pool draw. `indices` point into the pool; wrong/correct
/// bookkeeping happens downstream. `fallback_entered` is true when any of
/// the returned examples came from the fallback set (already classified,
/// never added to a training set). `shortfall` counts examples that could
/// not be supplied at all.
struct DrawResult {
  std::vector<std::size_t> indices;
  bool fallback_entered = false;
  std::size_t shortfall = 0;
};

/// Finite stand-in for the example distribution: hands out examples
/// uniformly without replacement. Once every example has been handed out,
/// draws fall back to examples that were never added to a teacher's
/// training set (one pass, again without replacement). When that set is
/// also empty, sample_unseen throws PoolExhausted.
class ExamplePool {
public:
  ExamplePool(std::vector<LabeledExample> examples, int num_classes,
              std::uint64_t seed);

  /// Up to n fresh examples; fewer when the pool cannot supply n.
  /// Throws PoolExhausted when n > 0 and nothing can be returned.
  DrawResult sample_unseen(std::size_t n);

  /// Marks an example as a member of some teacher's training set; such
  /// examples are excluded from fallback draws.
  void mark_trained(std::size_t index);

  std::vector<LabeledExample> materialize(
      std::span<const std::size_t> indices) const;

  const LabeledExample& operator[](std::size_t i) const {
    return examples_[i];
  }
  std::size_t size() const { return examples_.size(); }
  int num_classes() const { return num_classes_; }
  std::size_t dim() const {
    return examples_.empty() ? 0 : examples_.front().features.size();
  }
  std::size_t unseen_count() const { return unseen_.size(); }
  bool in_fallback_phase() const { return fallback_built_; }

private:
  void build_fallback_queue();

  std::vector<LabeledExample> examples_;
  int num_classes_;
  Rng rng_;
  std::vector<std::size_t> unseen_;
  std::vector<char> handed_;
  std::vector<char> trained_;
  bool fallback_built_ = false;
  std::vector<std::size_t> fallback_queue_;
  std::size_t fallback_pos_ = 0;
};

}  // namespace tct
