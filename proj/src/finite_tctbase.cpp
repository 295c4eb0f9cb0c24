#include "tct/theory/finite_tctbase.hpp"

#include <stdexcept>

#include "tct/trace.hpp"

namespace tct {

FiniteTctBaseOutcome run_tctbase_finite(const FiniteHypothesisClass& cls,
                                        const SyntheticDistribution& mu,
                                        double alpha, int max_rounds,
                                        double budget, int k, CostShape f,
                                        std::uint64_t seed,
                                        std::size_t draw_limit) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("run_tctbase_finite: alpha in (0,1)");

  Rng rng = Rng(seed).substream("tctbase");
  std::vector<std::vector<std::uint64_t>> counts(
      cls.num_points(), std::vector<std::uint64_t>(cls.num_classes, 0));
  auto add_sample = [&](std::size_t point) {
    ++counts[point][mu.point_label(point)];
  };

  FiniteTctBaseOutcome out;
  add_sample(mu.sample_point_index(rng));
  out.total_samples = 1;

  double elapsed = 0.0;
  std::size_t set_size = 1;
  for (int round = 1; round <= max_rounds; ++round) {
    std::size_t h = finite_erm_counts(cls, counts);
    elapsed += simulated_train_cost(set_size, k, f);
    out.erm_sequence.push_back(h);
    out.round_elapsed.push_back(elapsed);
    if (elapsed <= budget) out.returned = h;
    if (elapsed >= budget) break;

    std::uint64_t pow2 = std::uint64_t{1} << round;
    std::size_t unbiased_quota =
        floor_count((1.0 - alpha) * static_cast<double>(pow2));
    std::size_t wrong_quota = static_cast<std::size_t>(pow2) - unbiased_quota;

    for (std::size_t i = 0; i < unbiased_quota; ++i)
      add_sample(mu.sample_point_index(rng));
    std::size_t accepted = unbiased_quota;

    bool limit_hit = false;
    for (std::size_t i = 0; i < wrong_quota && !limit_hit; ++i) {
      std::size_t consecutive = 0;
      while (true) {
        std::size_t point = mu.sample_point_index(rng);
        if (cls.labels[h][point] != mu.point_label(point)) {
          add_sample(point);
          ++accepted;
          break;
        }
        if (++consecutive >= draw_limit) {
          limit_hit = true;
          break;
        }
      }
    }
    set_size += accepted;
    out.total_samples += accepted;
    if (limit_hit) {
      out.draw_limit_hit = true;
      break;
    }
  }
  return out;
}

}  // namespace tct
