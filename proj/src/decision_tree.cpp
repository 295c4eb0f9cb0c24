#include "tct/learners/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tct/rng.hpp"

namespace tct {

namespace {

struct TreeNode {
  bool leaf = true;
  int label = 0;
  std::vector<double> probs;
  int feature = -1;
  double threshold = 0.0;
  int left = -1;   // features[feature] < threshold
  int right = -1;  // features[feature] >= threshold
};

class TreeModel : public Model {
public:
  TreeModel(std::vector<TreeNode> nodes, int num_classes)
      : nodes_(std::move(nodes)), num_classes_(num_classes) {}

  int predict(std::span<const double> features) const override {
    return nodes_[descend(features)].label;
  }
  bool supports_probabilities() const override { return true; }
  std::vector<double> predict_proba(
      std::span<const double> features) const override {
    return nodes_[descend(features)].probs;
  }
  int num_classes() const { return num_classes_; }

private:
  std::size_t descend(std::span<const double> features) const {
    std::size_t i = 0;
    while (!nodes_[i].leaf) {
      const TreeNode& n = nodes_[i];
      i = features[n.feature] < n.threshold ? n.left : n.right;
    }
    return i;
  }

  std::vector<TreeNode> nodes_;
  int num_classes_;
};

double gini(const std::vector<std::size_t>& counts, std::size_t total) {
  if (total == 0) return 0.0;
  double g = 1.0;
  for (std::size_t c : counts) {
    double p = static_cast<double>(c) / static_cast<double>(total);
    g -= p * p;
  }
  return g;
}

struct Builder {
  const std::vector<LabeledExample>& data;
  int k;
  int min_split;
  int max_depth;
  std::vector<TreeNode> nodes;

  int make_leaf(const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i : idx) ++counts[data[i].label];
    TreeNode node;
    node.leaf = true;
    node.label = static_cast<int>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    node.probs.resize(k, 0.0);
    if (!idx.empty())
      for (int c = 0; c < k; ++c)
        node.probs[c] =
            static_cast<double>(counts[c]) / static_cast<double>(idx.size());
    else
      node.probs[0] = 1.0;
    nodes.push_back(std::move(node));
    return static_cast<int>(nodes.size() - 1);
  }

  bool pure(const std::vector<std::size_t>& idx) const {
    for (std::size_t i = 1; i < idx.size(); ++i)
      if (data[idx[i]].label != data[idx[0]].label) return false;
    return true;
  }

  int build(std::vector<std::size_t> idx, int depth) {
    if (idx.empty() || depth >= max_depth ||
        idx.size() < static_cast<std::size_t>(min_split) || pure(idx))
      return make_leaf(idx);

    std::size_t dim = data[idx[0]].features.size();
    std::size_t n = idx.size();
    std::vector<std::size_t> total_counts(k, 0);
    for (std::size_t i : idx) ++total_counts[data[i].label];

    // Best candidate by weighted child impurity, first-found on ties.
    // Zero-gain splits are allowed (depth still bounds the recursion);
    // parity-style data needs them to make progress.
    int best_feature = -1;
    double best_threshold = 0.0;
    double best_score = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> order(idx);
    for (std::size_t f = 0; f < dim; ++f) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return data[a].features[f] < data[b].features[f];
      });
      std::vector<std::size_t> left_counts(k, 0);
      std::size_t n_left = 0;
      for (std::size_t pos = 0; pos + 1 < n; ++pos) {
        ++left_counts[data[order[pos]].label];
        ++n_left;
        double x = data[order[pos]].features[f];
        double x_next = data[order[pos + 1]].features[f];
        if (x == x_next) continue;
        std::vector<std::size_t> right_counts(k);
        for (int c = 0; c < k; ++c)
          right_counts[c] = total_counts[c] - left_counts[c];
        double score = (static_cast<double>(n_left) * gini(left_counts, n_left) +
                        static_cast<double>(n - n_left) *
                            gini(right_counts, n - n_left)) /
                       static_cast<double>(n);
        if (score < best_score - 1e-12) {
          best_score = score;
          best_feature = static_cast<int>(f);
          best_threshold = (x + x_next) / 2.0;
        }
      }
    }

    if (best_feature < 0) return make_leaf(idx);

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx) {
      if (data[i].features[best_feature] < best_threshold)
        left_idx.push_back(i);
      else
        right_idx.push_back(i);
    }
    TreeNode node;
    node.leaf = false;
    node.feature = best_feature;
    node.threshold = best_threshold;
    nodes.push_back(node);
    int self = static_cast<int>(nodes.size() - 1);
    int left = build(std::move(left_idx), depth + 1);
    int right = build(std::move(right_idx), depth + 1);
    nodes[self].left = left;
    nodes[self].right = right;
    // predict() on an inner node never fires; keep label/probs from majority
    nodes[self].label = nodes[left].label;
    return self;
  }
};

int infer_classes(const std::vector<LabeledExample>& examples, int declared) {
  if (declared > 0) return declared;
  int k = 1;
  for (const auto& e : examples) k = std::max(k, e.label + 1);
  return k;
}

}  // namespace

ModelPtr DecisionTreeLearner::train(
    const std::vector<LabeledExample>& examples) const {
  int k = infer_classes(examples, num_classes_);
  Builder builder{examples, k, min_samples_split_, max_depth_, {}};
  std::vector<std::size_t> idx(examples.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  builder.build(std::move(idx), 0);
  return std::make_shared<TreeModel>(std::move(builder.nodes), k);
}

namespace {

class VoteModel : public Model {
public:
  VoteModel(std::vector<ModelPtr> trees, int num_classes)
      : trees_(std::move(trees)), num_classes_(num_classes) {}

  int predict(std::span<const double> features) const override {
    std::vector<double> p = predict_proba(features);
    return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
  }
  bool supports_probabilities() const override { return true; }
  std::vector<double> predict_proba(
      std::span<const double> features) const override {
    std::vector<double> acc(num_classes_, 0.0);
    for (const auto& t : trees_) {
      std::vector<double> p = t->predict_proba(features);
      for (int c = 0; c < num_classes_; ++c) acc[c] += p[c];
    }
    double total = 0.0;
    for (double v : acc) total += v;
    if (total > 0.0)
      for (double& v : acc) v /= total;
    else
      acc[0] = 1.0;
    return acc;
  }

private:
  std::vector<ModelPtr> trees_;
  int num_classes_;
};

}  // namespace

ModelPtr BaggedTreesLearner::train(
    const std::vector<LabeledExample>& examples) const {
  int k = infer_classes(examples, num_classes_);
  DecisionTreeLearner base(min_samples_split_, max_depth_, k, cost_);
  Rng rng = Rng(seed_).substream("bagging");
  std::vector<ModelPtr> trees;
  trees.reserve(num_trees_);
  for (int t = 0; t < num_trees_; ++t) {
    std::vector<LabeledExample> boot;
    boot.reserve(examples.size());
    if (examples.empty()) {
      trees.push_back(base.train(examples));
      continue;
    }
    for (std::size_t i = 0; i < examples.size(); ++i)
      boot.push_back(examples[rng.uniform_below(examples.size())]);
    trees.push_back(base.train(boot));
  }
  return std::make_shared<VoteModel>(std::move(trees), k);
}

}  // namespace tct
