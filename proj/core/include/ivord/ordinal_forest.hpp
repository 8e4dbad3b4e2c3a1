#pragma once

#include <span>
#include <vector>

#include "ivord/forest.hpp"

namespace ivord {

struct OfParams {
  int n_sets = 20;
  int trees_per_set = 25;
  int n_best = 5;
  int trees_final = 200;
  int mtry = 0;
  int min_leaf = 5;
  unsigned jobs = 1;
};

/// Borders 0 = b_0 < b_1 < ... < b_Q = 1 and class scores at the midpoints.
struct ScoreSet {
  std::vector<double> borders;
  std::vector<double> scores;
  double oob_accuracy = 0.0;
};

struct OfModel {
  int num_classes = 0;
  std::vector<double> borders;
  std::vector<double> scores;
  ForestModel forest;
  std::vector<ScoreSet> candidates;  // scored candidates behind the final borders
};

/// Class q such that b_{q-1} < score <= b_q; scores <= 0 map to class 1 and
/// scores > 1 to class Q.
int class_from_score(std::span<const double> borders, double score);

/// Border-wise mean of several score sets, with midpoint scores.
ScoreSet average_score_sets(std::span<const ScoreSet> sets);

/// Score set from Q-1 sorted uniform cut points; coincident cut points are
/// redrawn.
ScoreSet random_score_set(int num_classes, RngStream& rng);

/// Ordinal forest: candidate score sets are ranked by out-of-bag accuracy of
/// small regression forests, the best n_best are averaged, and a final forest
/// is grown on the averaged scores.
OfModel of_fit(const Matrix& x, std::span<const int> y, int num_classes, const OfParams& params,
               const RngStream& rng);

int of_predict(const OfModel& model, std::span<const double> x);

}  // namespace ivord
