#include "ivord/standardize.hpp"

#include <cmath>
#include <string>

#include "ivord/error.hpp"

namespace ivord {

StandardizationParams standardize_curves_fit(const LabeledDataset& train) {
  validate(train);
  if (train.kind() != DataKind::Curve) {
    fail(ErrorCode::ShapeMismatch, "standardization needs curve data");
  }
  if (train.size() < 2) fail(ErrorCode::InvalidParameter, "need at least 2 curves");

  const auto& first = std::get<IntervalCurve>(train.observations.front());
  const std::size_t channels = first.num_channels();
  const std::size_t points = first.grid_size();
  const auto n = static_cast<double>(train.size());

  StandardizationParams params;
  params.grid = first.grid;
  params.mean.assign(channels, std::vector<double>(points, 0.0));
  params.sd.assign(channels, std::vector<double>(points, 0.0));

  for (const auto& obs : train.observations) {
    const auto& c = std::get<IntervalCurve>(obs);
    for (std::size_t v = 0; v < channels; ++v) {
      for (std::size_t t = 0; t < points; ++t) params.mean[v][t] += c.at(v, t).midpoint();
    }
  }
  for (auto& row : params.mean) {
    for (double& m : row) m /= n;
  }
  for (const auto& obs : train.observations) {
    const auto& c = std::get<IntervalCurve>(obs);
    for (std::size_t v = 0; v < channels; ++v) {
      for (std::size_t t = 0; t < points; ++t) {
        const double d = c.at(v, t).midpoint() - params.mean[v][t];
        params.sd[v][t] += d * d;
      }
    }
  }
  for (std::size_t v = 0; v < channels; ++v) {
    for (std::size_t t = 0; t < points; ++t) {
      double& s = params.sd[v][t];
      s = std::sqrt(s / (n - 1.0));
      if (!(s > 0.0)) {
        fail(ErrorCode::ZeroVariance, "zero midpoint sd at channel " + std::to_string(v) +
                                          ", grid index " + std::to_string(t));
      }
    }
  }
  return params;
}

IntervalCurve standardize_curves_apply(const StandardizationParams& params,
                                       const IntervalCurve& curve) {
  if (curve.grid_size() != params.grid.size() ||
      curve.num_channels() != params.mean.size()) {
    fail(ErrorCode::ShapeMismatch, "curve grid/channels differ from standardization params");
  }
  IntervalCurve out = curve;
  for (std::size_t v = 0; v < out.channels.size(); ++v) {
    auto& ch = out.channels[v];
    for (std::size_t t = 0; t < ch.lower.size(); ++t) {
      ch.lower[t] = (ch.lower[t] - params.mean[v][t]) / params.sd[v][t];
      ch.upper[t] = (ch.upper[t] - params.mean[v][t]) / params.sd[v][t];
    }
  }
  return out;
}

LabeledDataset standardize_curves_apply(const StandardizationParams& params,
                                        const LabeledDataset& data) {
  LabeledDataset out = data;
  for (auto& obs : out.observations) {
    const auto* c = std::get_if<IntervalCurve>(&obs);
    if (c == nullptr) fail(ErrorCode::ShapeMismatch, "standardization needs curve data");
    obs = standardize_curves_apply(params, *c);
  }
  return out;
}

}  // namespace ivord
