#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ivord/linalg.hpp"
#include "ivord/rng.hpp"

namespace ivord {

struct ForestParams {
  int num_trees = 500;
  int mtry = 0;      // 0 selects ceil(p / 3)
  int min_leaf = 5;  // minimum bootstrap samples per leaf
  unsigned jobs = 1;
};

/// Flattened CART node; feature < 0 marks a leaf.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;  // x[feature] <= threshold goes left
  int left = -1;
  int right = -1;
  double value = 0.0;      // mean target of the node's samples
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(std::span<const double> x) const;
};

struct ForestModel {
  std::size_t num_features = 0;
  int mtry = 1;
  int min_leaf = 5;
  std::vector<RegressionTree> trees;
  /// inbag[t][i]: bootstrap multiplicity of training row i in tree t.
  std::vector<std::vector<std::uint16_t>> inbag;
  /// Mean over trees not containing row i; NaN if row i was in every bag.
  std::vector<double> oob_predictions;
};

/// Regression forest of CART trees grown on bootstrap samples. Tree t draws
/// from rng.split(t), so results do not depend on `jobs`. Constant features
/// yield leaves rather than errors. Throws InvalidParameter when
/// N < 2 * min_leaf.
ForestModel rforest_fit(const Matrix& x, std::span<const double> targets,
                        const ForestParams& params, const RngStream& rng);

/// Mean of the tree predictions.
double rforest_predict(const ForestModel& model, std::span<const double> x);

}  // namespace ivord
