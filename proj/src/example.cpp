#include "tct/example.hpp"

#include <numeric>
#include <stdexcept>

#include "tct/errors.hpp"

namespace tct {

ExamplePool::ExamplePool(std::vector<LabeledExample> examples, int num_classes,
                         std::uint64_t seed)
    : examples_(std::move(examples)),
      num_classes_(num_classes),
      rng_(Rng(seed).substream("pool")),
      handed_(examples_.size(), 0),
      trained_(examples_.size(), 0) {
  if (num_classes_ < 1)
    throw std::invalid_argument("ExamplePool: need at least one class");
  std::size_t dim = examples_.empty() ? 0 : examples_.front().features.size();
  for (const auto& e : examples_) {
    if (e.features.size() != dim)
      throw std::invalid_argument("ExamplePool: ragged feature vectors");
    if (e.label < 0 || e.label >= num_classes_)
      throw std::invalid_argument("ExamplePool: label out of range");
  }
  unseen_.resize(examples_.size());
  std::iota(unseen_.begin(), unseen_.end(), std::size_t{0});
}

void ExamplePool::build_fallback_queue() {
  fallback_built_ = true;
  fallback_queue_.clear();
  for (std::size_t i = 0; i < examples_.size(); ++i)
    if (handed_[i] && !trained_[i]) fallback_queue_.push_back(i);
  rng_.shuffle(fallback_queue_);
  fallback_pos_ = 0;
}

DrawResult ExamplePool::sample_unseen(std::size_t n) {
  DrawResult out;
  out.indices.reserve(n);
  while (out.indices.size() < n && !unseen_.empty()) {
    std::size_t j = rng_.uniform_below(unseen_.size());
    std::size_t idx = unseen_[j];
    unseen_[j] = unseen_.back();
    unseen_.pop_back();
    handed_[idx] = 1;
    out.indices.push_back(idx);
  }
  if (out.indices.size() < n) {
    if (!fallback_built_) build_fallback_queue();
    while (out.indices.size() < n && fallback_pos_ < fallback_queue_.size()) {
      std::size_t idx = fallback_queue_[fallback_pos_++];
      if (trained_[idx]) continue;  // joined a training set since the build
      out.fallback_entered = true;
      out.indices.push_back(idx);
    }
  }
  if (out.indices.size() < n) {
    if (out.indices.empty() && n > 0)
      throw PoolExhausted("sample_unseen: pool and fallback set exhausted");
    out.shortfall = n - out.indices.size();
  }
  return out;
}

void ExamplePool::mark_trained(std::size_t index) {
  if (index >= examples_.size())
    throw std::out_of_range("mark_trained: bad index");
  trained_[index] = 1;
}

std::vector<LabeledExample> ExamplePool::materialize(
    std::span<const std::size_t> indices) const {
  std::vector<LabeledExample> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(examples_[i]);
  return out;
}

}  // namespace tct
