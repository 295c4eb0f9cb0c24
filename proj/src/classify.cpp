#include "tct/classify.hpp"

#include "tct/errors.hpp"

namespace tct {

namespace {

template <typename GetExample>
ClassifySplit split_impl(const Model& model, std::size_t n, GetExample get,
                         CostClock& clock) {
  if (n == 0) throw EmptyBatch("classify_and_split: empty batch");
  ClassifySplit out;
  for (std::size_t i = 0; i < n; ++i) {
    const LabeledExample& e = get(i);
    if (model.predict(e.features) == e.label)
      out.correct.push_back(i);
    else
      out.wrong.push_back(i);
  }
  clock.charge_classification(n);
  out.accuracy =
      static_cast<double>(out.correct.size()) / static_cast<double>(n);
  return out;
}

}  // namespace

ClassifySplit classify_and_split(const Model& model,
                                 const std::vector<LabeledExample>& batch,
                                 CostClock& clock) {
  return split_impl(
      model, batch.size(), [&](std::size_t i) -> const LabeledExample& {
        return batch[i];
      },
      clock);
}

ClassifySplit classify_and_split(const Model& model, const ExamplePool& pool,
                                 std::span<const std::size_t> indices,
                                 CostClock& clock) {
  return split_impl(
      model, indices.size(), [&](std::size_t i) -> const LabeledExample& {
        return pool[indices[i]];
      },
      clock);
}

}  // namespace tct
