#include "ivord/ordinal_forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ivord/error.hpp"

namespace ivord {
namespace {

void fill_scores(ScoreSet& set) {
  set.scores.resize(set.borders.size() - 1);
  for (std::size_t q = 0; q + 1 < set.borders.size(); ++q) {
    set.scores[q] = 0.5 * (set.borders[q] + set.borders[q + 1]);
  }
}

std::vector<double> scored_targets(std::span<const int> y, const ScoreSet& set) {
  std::vector<double> t(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) t[i] = set.scores[static_cast<std::size_t>(y[i] - 1)];
  return t;
}

}  // namespace

int class_from_score(std::span<const double> borders, double score) {
  const int q = static_cast<int>(borders.size()) - 1;
  for (int c = 1; c < q; ++c) {
    if (score <= borders[static_cast<std::size_t>(c)]) return c;
  }
  return q;
}

ScoreSet average_score_sets(std::span<const ScoreSet> sets) {
  if (sets.empty()) fail(ErrorCode::InvalidParameter, "no score sets to average");
  ScoreSet out;
  out.borders.assign(sets.front().borders.size(), 0.0);
  for (const auto& s : sets) {
    if (s.borders.size() != out.borders.size()) {
      fail(ErrorCode::ShapeMismatch, "score sets differ in class count");
    }
    for (std::size_t j = 0; j < s.borders.size(); ++j) out.borders[j] += s.borders[j];
  }
  for (double& b : out.borders) b /= static_cast<double>(sets.size());
  out.borders.front() = 0.0;
  out.borders.back() = 1.0;
  fill_scores(out);
  return out;
}

ScoreSet random_score_set(int num_classes, RngStream& rng) {
  const auto cuts = static_cast<std::size_t>(num_classes - 1);
  ScoreSet set;
  while (true) {
    set.borders.assign(1, 0.0);
    for (std::size_t j = 0; j < cuts; ++j) set.borders.push_back(rng.uniform());
    set.borders.push_back(1.0);
    std::sort(set.borders.begin() + 1, set.borders.end() - 1);
    bool strict = true;
    for (std::size_t j = 1; j < set.borders.size(); ++j) {
      strict = strict && set.borders[j] > set.borders[j - 1];
    }
    if (strict) break;
  }
  fill_scores(set);
  return set;
}

OfModel of_fit(const Matrix& x, std::span<const int> y, int num_classes, const OfParams& params,
               const RngStream& rng) {
  if (y.size() != x.rows()) fail(ErrorCode::ShapeMismatch, "label count differs from rows");
  if (num_classes < 2) fail(ErrorCode::InvalidParameter, "OF needs at least two classes");
  std::vector<std::size_t> counts(static_cast<std::size_t>(num_classes), 0);
  for (int label : y) {
    if (label < 1 || label > num_classes) fail(ErrorCode::InvalidParameter, "label out of range");
    ++counts[static_cast<std::size_t>(label - 1)];
  }
  for (std::size_t q = 0; q < counts.size(); ++q) {
    if (counts[q] == 0) {
      fail(ErrorCode::InvalidParameter, "class " + std::to_string(q + 1) + " absent");
    }
  }
  if (params.n_sets < 1 || params.n_best < 1 || params.n_best > params.n_sets) {
    fail(ErrorCode::InvalidParameter, "OF needs 1 <= n_best <= n_sets");
  }

  OfModel model;
  model.num_classes = num_classes;
  RngStream set_rng = rng.split("score-sets");
  const ForestParams small{params.trees_per_set, params.mtry, params.min_leaf, params.jobs};

  for (int s = 0; s < params.n_sets; ++s) {
    ScoreSet set = random_score_set(num_classes, set_rng);
    const auto forest = rforest_fit(x, scored_targets(y, set), small,
                                    rng.split(static_cast<std::uint64_t>(s) + 1));
    std::size_t hits = 0;
    std::size_t seen = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double pred = forest.oob_predictions[i];
      if (std::isnan(pred)) continue;
      ++seen;
      hits += class_from_score(set.borders, pred) == y[i];
    }
    set.oob_accuracy = seen == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(seen);
    model.candidates.push_back(std::move(set));
  }

  std::vector<std::size_t> order(model.candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return model.candidates[a].oob_accuracy > model.candidates[b].oob_accuracy;
  });
  std::vector<ScoreSet> best;
  for (int b = 0; b < params.n_best; ++b) best.push_back(model.candidates[order[static_cast<std::size_t>(b)]]);
  const ScoreSet final_set = average_score_sets(best);
  model.borders = final_set.borders;
  model.scores = final_set.scores;

  const ForestParams big{params.trees_final, params.mtry, params.min_leaf, params.jobs};
  model.forest = rforest_fit(x, scored_targets(y, final_set), big, rng.split("final"));
  return model;
}

int of_predict(const OfModel& model, std::span<const double> x) {
  return class_from_score(model.borders, rforest_predict(model.forest, x));
}

}  // namespace ivord
