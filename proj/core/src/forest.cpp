#include "ivord/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ivord/error.hpp"
#include "ivord/parallel.hpp"

namespace ivord {
namespace {

struct Grower {
  const Matrix& x;
  std::span<const double> y;
  std::size_t mtry;
  std::size_t min_leaf;
  RngStream& rng;
  RegressionTree tree;
  std::vector<std::size_t> features;
  std::vector<std::pair<double, std::size_t>> buffer;

  int grow(std::vector<std::size_t>& rows, std::size_t begin, std::size_t end) {
    const std::size_t n = end - begin;
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += y[rows[i]];
    const double mean = sum / static_cast<double>(n);

    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, mean});

    bool constant = true;
    for (std::size_t i = begin + 1; i < end && constant; ++i) constant = y[rows[i]] == y[rows[begin]];
    if (n < 2 * min_leaf || constant) return id;

    // sample mtry candidate features without replacement
    for (std::size_t j = 0; j < mtry; ++j) {
      const auto pick = j + static_cast<std::size_t>(rng.uniform_index(features.size() - j));
      std::swap(features[j], features[pick]);
    }

    double best_score = sum * sum / static_cast<double>(n);
    int best_feature = -1;
    double best_threshold = 0.0;
    for (std::size_t f = 0; f < mtry; ++f) {
      const std::size_t feat = features[f];
      buffer.clear();
      for (std::size_t i = begin; i < end; ++i) buffer.emplace_back(x(rows[i], feat), rows[i]);
      std::sort(buffer.begin(), buffer.end());
      if (buffer.front().first == buffer.back().first) continue;
      double left = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left += y[buffer[i].second];
        const std::size_t nl = i + 1;
        const std::size_t nr = n - nl;
        if (nl < min_leaf) continue;
        if (nr < min_leaf) break;
        if (buffer[i].first == buffer[i + 1].first) continue;
        const double right = sum - left;
        const double score = left * left / static_cast<double>(nl) +
                             right * right / static_cast<double>(nr);
        if (score > best_score * (1.0 + 1e-12) + 1e-300) {
          best_score = score;
          best_feature = static_cast<int>(feat);
          best_threshold = 0.5 * (buffer[i].first + buffer[i + 1].first);
          if (!(best_threshold < buffer[i + 1].first)) best_threshold = buffer[i].first;
        }
      }
    }
    if (best_feature < 0) return id;

    const auto feat = static_cast<std::size_t>(best_feature);
    const auto mid = std::stable_partition(rows.begin() + static_cast<std::ptrdiff_t>(begin),
                                           rows.begin() + static_cast<std::ptrdiff_t>(end),
                                           [&](std::size_t r) { return x(r, feat) <= best_threshold; });
    const auto split = static_cast<std::size_t>(mid - rows.begin());
    tree.nodes[static_cast<std::size_t>(id)].feature = best_feature;
    tree.nodes[static_cast<std::size_t>(id)].threshold = best_threshold;
    const int l = grow(rows, begin, split);
    const int r = grow(rows, split, end);
    tree.nodes[static_cast<std::size_t>(id)].left = l;
    tree.nodes[static_cast<std::size_t>(id)].right = r;
    return id;
  }
};

}  // namespace

double RegressionTree::predict(std::span<const double> x) const {
  std::size_t node = 0;
  while (nodes[node].feature >= 0) {
    const auto& nd = nodes[node];
    node = static_cast<std::size_t>(x[static_cast<std::size_t>(nd.feature)] <= nd.threshold
                                        ? nd.left
                                        : nd.right);
  }
  return nodes[node].value;
}

ForestModel rforest_fit(const Matrix& x, std::span<const double> targets,
                        const ForestParams& params, const RngStream& rng) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (targets.size() != n) fail(ErrorCode::ShapeMismatch, "target count differs from rows");
  if (params.min_leaf < 1 || params.num_trees < 1) {
    fail(ErrorCode::InvalidParameter, "forest needs min_leaf >= 1 and num_trees >= 1");
  }
  if (n < 2 * static_cast<std::size_t>(params.min_leaf)) {
    fail(ErrorCode::InvalidParameter, "forest needs N >= 2 * min_leaf");
  }
  if (p == 0) fail(ErrorCode::InvalidParameter, "forest needs at least one feature");

  ForestModel model;
  model.num_features = p;
  model.min_leaf = params.min_leaf;
  model.mtry = params.mtry > 0 ? std::min(params.mtry, static_cast<int>(p))
                               : static_cast<int>((p + 2) / 3);
  const auto trees = static_cast<std::size_t>(params.num_trees);
  model.trees.resize(trees);
  model.inbag.assign(trees, std::vector<std::uint16_t>(n, 0));

  parallel_for(trees, params.jobs, [&](std::size_t t) {
    RngStream tree_rng = rng.split(t);
    std::vector<std::size_t> rows(n);
    for (auto& r : rows) {
      r = static_cast<std::size_t>(tree_rng.uniform_index(n));
      ++model.inbag[t][r];
    }
    std::sort(rows.begin(), rows.end());
    Grower g{x, targets, static_cast<std::size_t>(model.mtry),
             static_cast<std::size_t>(params.min_leaf), tree_rng, {}, {}, {}};
    g.features.resize(p);
    std::iota(g.features.begin(), g.features.end(), 0);
    g.grow(rows, 0, n);
    model.trees[t] = std::move(g.tree);
  });

  model.oob_predictions.assign(n, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    std::size_t count = 0;
    for (std::size_t t = 0; t < trees; ++t) {
      if (model.inbag[t][i] == 0) {
        s += model.trees[t].predict(x.row(i));
        ++count;
      }
    }
    if (count > 0) model.oob_predictions[i] = s / static_cast<double>(count);
  }
  return model;
}

double rforest_predict(const ForestModel& model, std::span<const double> x) {
  if (x.size() != model.num_features) fail(ErrorCode::ShapeMismatch, "forest feature count");
  double s = 0.0;
  for (const auto& tree : model.trees) s += tree.predict(x);
  return s / static_cast<double>(model.trees.size());
}

}  // namespace ivord
