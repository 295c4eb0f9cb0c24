#pragma once

#include <span>
#include <vector>

#include "tct/clock.hpp"
#include "tct/example.hpp"
#include "tct/model.hpp"

namespace tct {

/// Order-stable partition of a batch by model verdict. `wrong` and
/// `correct` hold positions into the batch, each in batch order.
struct ClassifySplit {
  double accuracy = 0.0;
  std::vector<std::size_t> wrong;
  std::vector<std::size_t> correct;
};

/// Scores `batch` with `model`, charging c_clf per example to the clock.
/// Throws EmptyBatch on an empty input.
ClassifySplit classify_and_split(const Model& model,
                                 const std::vector<LabeledExample>& batch,
                                 CostClock& clock);

/// Same, over pool examples selected by index.
ClassifySplit classify_and_split(const Model& model, const ExamplePool& pool,
                                 std::span<const std::size_t> indices,
                                 CostClock& clock);

}  // namespace tct
