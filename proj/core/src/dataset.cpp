#include "ivord/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ivord/error.hpp"

namespace ivord {

DataKind LabeledDataset::kind() const {
  if (observations.empty()) fail(ErrorCode::ShapeMismatch, "empty dataset has no kind");
  return std::holds_alternative<IntervalVector>(observations.front()) ? DataKind::Vector
                                                                      : DataKind::Curve;
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> rows) const {
  LabeledDataset out;
  out.num_classes = num_classes;
  out.ids.reserve(rows.size());
  out.observations.reserve(rows.size());
  if (has_labels()) out.labels.reserve(rows.size());
  for (std::size_t r : rows) {
    out.ids.push_back(r < ids.size() ? ids[r] : std::to_string(r));
    out.observations.push_back(observations[r]);
    if (has_labels()) out.labels.push_back(labels[r]);
  }
  return out;
}

void validate(const LabeledDataset& data) {
  if (data.empty()) fail(ErrorCode::ShapeMismatch, "dataset is empty");
  if (!data.ids.empty() && data.ids.size() != data.size()) {
    fail(ErrorCode::ShapeMismatch, "id count differs from observation count");
  }
  if (data.has_labels()) {
    if (data.labels.size() != data.size()) {
      fail(ErrorCode::ShapeMismatch, "label count differs from observation count");
    }
    for (int y : data.labels) {
      if (y < 1 || y > data.num_classes) {
        fail(ErrorCode::InvalidParameter,
             "label " + std::to_string(y) + " outside 1.." + std::to_string(data.num_classes));
      }
    }
  }
  const DataKind kind = data.kind();
  if (kind == DataKind::Vector) {
    const auto k = std::get<IntervalVector>(data.observations.front()).size();
    if (k == 0) fail(ErrorCode::ShapeMismatch, "observations need at least one feature");
    for (const auto& obs : data.observations) {
      const auto* x = std::get_if<IntervalVector>(&obs);
      if (x == nullptr) fail(ErrorCode::ShapeMismatch, "dataset mixes vectors and curves");
      if (x->size() != k) fail(ErrorCode::ShapeMismatch, "observations differ in feature count");
      for (const auto& iv : x->features) make_interval(iv.lower, iv.upper);
    }
  } else {
    const auto& first = std::get<IntervalCurve>(data.observations.front());
    for (const auto& obs : data.observations) {
      const auto* c = std::get_if<IntervalCurve>(&obs);
      if (c == nullptr) fail(ErrorCode::ShapeMismatch, "dataset mixes vectors and curves");
      validate(*c);
      if (c->grid != first.grid || c->num_channels() != first.num_channels()) {
        fail(ErrorCode::ShapeMismatch, "curves differ in grid or channel count");
      }
    }
  }
}

void validate_training(const LabeledDataset& data) {
  validate(data);
  if (!data.has_labels()) fail(ErrorCode::InvalidParameter, "training data needs labels");
  if (data.num_classes < 2) fail(ErrorCode::InvalidParameter, "need at least two classes");
  const auto counts = class_counts(data);
  for (std::size_t q = 0; q < counts.size(); ++q) {
    if (counts[q] == 0) {
      fail(ErrorCode::InvalidParameter,
           "class " + std::to_string(q + 1) + " absent from training data");
    }
  }
}

std::vector<std::size_t> class_counts(const LabeledDataset& data) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(data.num_classes, 0)), 0);
  for (int y : data.labels) {
    if (y >= 1 && y <= data.num_classes) ++counts[static_cast<std::size_t>(y - 1)];
  }
  return counts;
}

std::vector<IntervalVector> as_vectors(const LabeledDataset& data, std::size_t subsample_step) {
  std::vector<IntervalVector> out;
  out.reserve(data.size());
  for (const auto& obs : data.observations) {
    if (const auto* x = std::get_if<IntervalVector>(&obs)) {
      out.push_back(*x);
    } else {
      out.push_back(curve_to_vector(subsample_grid(std::get<IntervalCurve>(obs), subsample_step)));
    }
  }
  return out;
}

std::vector<std::vector<double>> midpoint_view(std::span<const IntervalVector> data) {
  std::vector<std::vector<double>> out;
  out.reserve(data.size());
  for (const auto& x : data) {
    std::vector<double> row(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) row[k] = x[k].midpoint();
    out.push_back(std::move(row));
  }
  return out;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) fail(ErrorCode::InvalidParameter, "quantile of empty data");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<int> percentile_labels(std::span<const double> values, int num_classes) {
  if (num_classes < 2) fail(ErrorCode::InvalidParameter, "need Q >= 2");
  if (values.empty()) fail(ErrorCode::InvalidParameter, "no values to label");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t n_distinct = sorted.empty() ? 0 : 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) n_distinct += sorted[i] != sorted[i - 1];
  const auto q_count = static_cast<std::size_t>(num_classes);
  if (q_count > n_distinct) {
    fail(ErrorCode::TooManyClasses, std::to_string(num_classes) + " classes but only " +
                                        std::to_string(n_distinct) + " distinct values");
  }

  std::vector<double> cuts(q_count - 1);
  for (std::size_t q = 1; q < q_count; ++q) {
    cuts[q - 1] = quantile_sorted(sorted, static_cast<double>(q) / static_cast<double>(q_count));
  }
  std::vector<int> labels(values.size());
  std::vector<std::size_t> counts(q_count, 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    // number of cut points <= value
    const auto above = std::upper_bound(cuts.begin(), cuts.end(), values[i]) - cuts.begin();
    labels[i] = static_cast<int>(above) + 1;
    ++counts[static_cast<std::size_t>(above)];
  }
  for (std::size_t q = 0; q < q_count; ++q) {
    if (counts[q] == 0) {
      fail(ErrorCode::TooManyClasses,
           "ties leave class " + std::to_string(q + 1) + " empty");
    }
  }
  return labels;
}

}  // namespace ivord
