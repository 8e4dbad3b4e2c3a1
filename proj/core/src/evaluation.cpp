#include "ivord/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ivord/error.hpp"

namespace ivord {

TrainTestSplit split_indices(const LabeledDataset& data, double train_frac, RngStream& rng) {
  const std::size_t n = data.size();
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    fail(ErrorCode::InvalidParameter, "train fraction must lie in (0, 1)");
  }
  const auto n_train = static_cast<std::size_t>(std::llround(train_frac * static_cast<double>(n)));
  if (n_train == 0 || n_train >= n) {
    fail(ErrorCode::InvalidParameter, "split leaves an empty train or test part");
  }
  std::vector<std::size_t> perm(n);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_index(i + 1)]);
    TrainTestSplit s;
    s.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
    if (!data.has_labels()) return s;
    std::vector<bool> seen(static_cast<std::size_t>(data.num_classes), false);
    for (std::size_t r : s.train) seen[static_cast<std::size_t>(data.labels[r] - 1)] = true;
    if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) return s;
  }
  fail(ErrorCode::SplitFailed, "no split with every class in training after 100 attempts");
}

std::pair<LabeledDataset, LabeledDataset> split_train_test(const LabeledDataset& data,
                                                           double train_frac, RngStream& rng) {
  const auto s = split_indices(data, train_frac, rng);
  return {data.subset(s.train), data.subset(s.test)};
}

std::uint64_t split_hash(const TrainTestSplit& split) {
  std::string bytes;
  bytes.reserve(split.train.size() * 8);
  for (std::size_t r : split.train) {
    for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<char>((r >> (8 * b)) & 0xff));
  }
  return stable_hash(bytes);
}

ReplicateMetrics evaluate(std::span<const int> predictions, std::span<const int> truth,
                          int num_classes) {
  if (predictions.size() != truth.size()) {
    fail(ErrorCode::ShapeMismatch, "prediction and truth lengths differ");
  }
  if (truth.empty()) fail(ErrorCode::ShapeMismatch, "nothing to evaluate");
  const auto q = static_cast<std::size_t>(num_classes);
  ReplicateMetrics m;
  m.confusion.assign(q, std::vector<std::size_t>(q, 0));
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 1 || truth[i] > num_classes || predictions[i] < 1 ||
        predictions[i] > num_classes) {
      fail(ErrorCode::InvalidParameter, "label outside 1..Q");
    }
    ++m.confusion[static_cast<std::size_t>(truth[i] - 1)][static_cast<std::size_t>(predictions[i] - 1)];
    correct += truth[i] == predictions[i];
  }
  m.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  m.per_class.resize(q);
  for (std::size_t c = 0; c < q; ++c) {
    std::size_t predicted = 0, actual = 0;
    for (std::size_t r = 0; r < q; ++r) {
      predicted += m.confusion[r][c];
      actual += m.confusion[c][r];
    }
    const double tp = static_cast<double>(m.confusion[c][c]);
    auto& pc = m.per_class[c];
    if (predicted > 0) pc.precision = tp / static_cast<double>(predicted);
    if (actual > 0) pc.recall = tp / static_cast<double>(actual);
    if (pc.precision && pc.recall && *pc.precision + *pc.recall > 0.0) {
      pc.f1 = 2.0 * *pc.precision * *pc.recall / (*pc.precision + *pc.recall);
    } else if (pc.precision && pc.recall) {
      pc.f1 = 0.0;
    }
  }
  return m;
}

}  // namespace ivord
