#pragma once

#include <stdexcept>
#include <string>

namespace tct {

struct PoolExhausted : std::runtime_error {
  explicit PoolExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyBatch : std::runtime_error {
  explicit EmptyBatch(const std::string& what) : std::runtime_error(what) {}
};

struct NoModel : std::runtime_error {
  explicit NoModel(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedLearner : std::runtime_error {
  explicit UnsupportedLearner(const std::string& what)
      : std::runtime_error(what) {}
};

struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateDataset : std::runtime_error {
  explicit DegenerateDataset(const std::string& what)
      : std::runtime_error(what) {}
};

struct UnsupportedCombination : std::runtime_error {
  explicit UnsupportedCombination(const std::string& what)
      : std::runtime_error(what) {}
};

struct EpsTooSmall : std::runtime_error {
  explicit EpsTooSmall(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tct
