#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tct {

/// Deterministic random stream with labeled substream derivation.
///
/// Every consumer (pool, teacher, learner, trial) derives its own stream
/// from a root seed and a label, so runs are replayable and independent
/// trials never share state. All draws go through our own reductions
/// (not std::uniform_*_distribution) so sequences are identical across
/// standard library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream keyed by (this stream's seed, label, index).
  Rng substream(std::string_view label, std::uint64_t index = 0) const;

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform in (0, 1]; safe as a log() argument.
  double uniform_pos();

  /// Unbiased uniform integer in [0, n); n must be positive.
  std::size_t uniform_below(std::size_t n);

  /// Standard normal via Box-Muller (two uniforms per call, no caching).
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  std::uint64_t seed() const { return seed_; }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Stateless seed mixer used for substream derivation.
std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                          std::uint64_t index = 0);

}  // namespace tct
