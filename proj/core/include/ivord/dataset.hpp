#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ivord/interval.hpp"

namespace ivord {

using Observation = std::variant<IntervalVector, IntervalCurve>;

enum class DataKind { Vector, Curve };

/// Homogeneous collection of IVD or IVF observations with ordinal labels
/// 1..num_classes. Labels may be empty for prediction-only inputs.
struct LabeledDataset {
  std::vector<std::string> ids;
  std::vector<Observation> observations;
  std::vector<int> labels;
  int num_classes = 0;

  std::size_t size() const noexcept { return observations.size(); }
  bool empty() const noexcept { return observations.empty(); }
  bool has_labels() const noexcept { return !labels.empty(); }
  DataKind kind() const;

  /// Rows selected by index, preserving num_classes.
  LabeledDataset subset(std::span<const std::size_t> rows) const;
};

/// Checks homogeneity (one kind, shared K or shared grid/V), label range and
/// id/label counts. Throws ShapeMismatch / InvalidParameter.
void validate(const LabeledDataset& data);

/// Additionally requires every class 1..Q to be present.
void validate_training(const LabeledDataset& data);

/// Per-class counts, index q-1 for class q.
std::vector<std::size_t> class_counts(const LabeledDataset& data);

/// Vector view of every observation: IVD passes through, IVF is optionally
/// subsampled then flattened with curve_to_vector.
std::vector<IntervalVector> as_vectors(const LabeledDataset& data,
                                       std::size_t subsample_step = 1);

/// Replaces each interval with its midpoint (row-major N x K).
std::vector<std::vector<double>> midpoint_view(
    std::span<const IntervalVector> data);

/// Equal-frequency ordinal codes from empirical percentiles of `values`.
/// Code q covers [L_{(q-1)/Q}, L_{q/Q}) with the last bin closed; quantiles
/// use linear interpolation of order statistics. Throws TooManyClasses when
/// Q exceeds the number of distinct values or a bin comes out empty.
std::vector<int> percentile_labels(std::span<const double> values, int num_classes);

/// Type-7 empirical quantile of sorted data, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

}  // namespace ivord
