#include "tct/theory/fallback.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tct/theory/finite_tctbase.hpp"

namespace tct {

double fallback_time_multiplier(double alpha, int k) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("fallback_time_multiplier: alpha in [0,1)");
  return 2.0 * std::pow(2.0 / (1.0 - alpha), k + 1);
}

double agnostic_slack(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("agnostic_slack: alpha in [0,1)");
  return alpha / (1.0 - alpha);
}

namespace {

struct Instance {
  FiniteHypothesisClass cls;
  SyntheticDistribution mu;
  std::vector<double> true_errors;  // per hypothesis
  double best_error;
};

/// Random binary hypotheses over atoms. Realizable: atom labels come from
/// one hypothesis; agnostic: each point splits into two atoms carrying
/// the noise-flipped label mass.
Instance make_instance(const FallbackParams& p, Rng& rng) {
  std::size_t num_points = p.num_points;
  std::vector<std::vector<int>> point_labels(p.num_hypotheses,
                                             std::vector<int>(num_points));
  for (auto& h : point_labels)
    for (auto& y : h) y = rng.uniform01() < 0.5 ? 0 : 1;
  std::size_t star = rng.uniform_below(p.num_hypotheses);

  FiniteHypothesisClass cls;
  cls.num_classes = 2;
  double point_mass = 1.0 / static_cast<double>(num_points);

  std::vector<double> weights;
  std::vector<int> atom_labels;
  std::vector<std::size_t> atom_point;
  if (!p.agnostic) {
    for (std::size_t q = 0; q < num_points; ++q) {
      cls.points.push_back(static_cast<double>(q));
      weights.push_back(point_mass);
      atom_labels.push_back(point_labels[star][q]);
      atom_point.push_back(q);
    }
  } else {
    for (std::size_t q = 0; q < num_points; ++q) {
      int y0 = point_labels[star][q];
      cls.points.push_back(static_cast<double>(2 * q));
      weights.push_back(point_mass * (1.0 - p.label_noise));
      atom_labels.push_back(y0);
      atom_point.push_back(q);
      cls.points.push_back(static_cast<double>(2 * q + 1));
      weights.push_back(point_mass * p.label_noise);
      atom_labels.push_back(1 - y0);
      atom_point.push_back(q);
    }
    // Guard against accumulated rounding in the weight total.
    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
  }

  cls.labels.resize(p.num_hypotheses);
  for (std::size_t h = 0; h < p.num_hypotheses; ++h) {
    cls.labels[h].resize(cls.points.size());
    for (std::size_t a = 0; a < cls.points.size(); ++a)
      cls.labels[h][a] = point_labels[h][atom_point[a]];
  }
  cls.validate();

  std::vector<double> true_errors(p.num_hypotheses, 0.0);
  double best_error = 1.0;
  for (std::size_t h = 0; h < p.num_hypotheses; ++h) {
    double err = 0.0;
    for (std::size_t a = 0; a < cls.points.size(); ++a)
      if (cls.labels[h][a] != atom_labels[a]) err += weights[a];
    true_errors[h] = err;
    best_error = std::min(best_error, err);
  }

  SyntheticDistribution mu = SyntheticDistribution::finite_weighted(
      cls.points, std::move(weights), std::move(atom_labels), 2);
  return Instance{std::move(cls), std::move(mu), std::move(true_errors),
                  best_error};
}

double quantile_upper(std::vector<double> v, double level) {
  std::sort(v.begin(), v.end());
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(level * static_cast<double>(v.size())));
  rank = std::clamp<std::size_t>(rank, 1, v.size());
  return v[rank - 1];
}

}  // namespace

FallbackReport verify_fallback_bounds(const FallbackParams& p) {
  if (p.trials < 1) throw std::invalid_argument("verify_fallback_bounds: trials");
  FallbackReport report;
  report.multiplier = fallback_time_multiplier(p.alpha, p.k);
  report.slack = agnostic_slack(p.alpha);
  report.agnostic = p.agnostic;

  Rng root = Rng(p.seed).substream("fallback");
  Rng instance_rng = root.substream("instance");
  Instance inst = make_instance(p, instance_rng);

  for (std::size_t m_T : p.batch_grid) {
    FallbackBudgetReport entry;
    entry.m_T = m_T;
    entry.budget = simulated_train_cost(m_T, p.k, CostShape::unit);
    entry.extended_budget = report.multiplier * entry.budget;
    entry.best_error = inst.best_error;

    std::vector<double> batch_errors(p.trials);
    for (int t = 0; t < p.trials; ++t) {
      Rng rng = root.substream("tbatch", static_cast<std::uint64_t>(t) * 1000 +
                                             m_T);
      std::vector<std::vector<std::uint64_t>> counts(
          inst.cls.num_points(), std::vector<std::uint64_t>(2, 0));
      for (std::size_t i = 0; i < m_T; ++i) {
        std::size_t a = inst.mu.sample_point_index(rng);
        ++counts[a][inst.mu.point_label(a)];
      }
      double err = inst.true_errors[finite_erm_counts(inst.cls, counts)];
      batch_errors[t] = p.agnostic ? err - inst.best_error : err;
    }
    entry.eps_quantile = quantile_upper(batch_errors, 1.0 - p.delta);

    int violations = 0;
    for (int t = 0; t < p.trials; ++t) {
      std::uint64_t seed = derive_seed(
          root.seed(), "tctbase-trial",
          static_cast<std::uint64_t>(t) * 1000 + m_T);
      FiniteTctBaseOutcome outcome = run_tctbase_finite(
          inst.cls, inst.mu, p.alpha, p.max_rounds, entry.extended_budget,
          p.k, CostShape::unit, seed, p.rejection_draw_limit);
      double err = outcome.returned == SIZE_MAX
                       ? 1.0
                       : inst.true_errors[outcome.returned];
      bool violated =
          p.agnostic
              ? err > inst.best_error + entry.eps_quantile + report.slack
              : err > entry.eps_quantile;
      if (violated) ++violations;
    }
    entry.violation_fraction =
        static_cast<double>(violations) / static_cast<double>(p.trials);
    report.budgets.push_back(entry);
  }
  return report;
}

}  // namespace tct
