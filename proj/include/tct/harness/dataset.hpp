#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tct/example.hpp"

namespace tct {

struct Dataset {
  std::string name;
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> test;
  int num_classes = 0;
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;
};

/// CSV loader with the standard preprocessing: shuffle, stratified 70/30
/// split, one-hot encoding of categorical columns, and per-feature
/// standardization of numeric columns using train-split statistics
/// (constant columns map to zeros). The label column defaults to the
/// last one and may be given by name or zero-based index.
///
/// Throws IoError on unreadable input and DegenerateDataset when only
/// one class is present.
Dataset load_dataset(const std::string& path, std::uint64_t split_seed,
                     const std::string& label_column = "",
                     double train_fraction = 0.7);

/// Accuracy on the test split of always predicting the train-majority
/// class.
double majority_baseline(const Dataset& dataset);

}  // namespace tct
