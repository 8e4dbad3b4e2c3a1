#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ivord/dataset.hpp"
#include "ivord/rng.hpp"

namespace ivord {

struct TrainTestSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Random permutation split; resamples (up to 100 times) until the training
/// part holds every class. Throws InvalidParameter when either part would be
/// empty and SplitFailed when coverage cannot be reached.
TrainTestSplit split_indices(const LabeledDataset& data, double train_frac, RngStream& rng);
std::pair<LabeledDataset, LabeledDataset> split_train_test(const LabeledDataset& data,
                                                           double train_frac, RngStream& rng);

/// FNV-1a over the training indices; identical splits hash identically.
std::uint64_t split_hash(const TrainTestSplit& split);

struct ClassMetrics {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

struct ReplicateMetrics {
  double accuracy = 0.0;
  std::vector<std::vector<std::size_t>> confusion;  // [truth-1][predicted-1]
  std::vector<ClassMetrics> per_class;
};

/// Labels must lie in 1..num_classes. Throws ShapeMismatch on length mismatch.
ReplicateMetrics evaluate(std::span<const int> predictions, std::span<const int> truth,
                          int num_classes);

}  // namespace ivord
