#include "ivord/interval.hpp"

#include <cmath>
#include <string>

#include "ivord/error.hpp"

namespace ivord {

Interval make_interval(double lower, double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper)) {
    fail(ErrorCode::InvalidInterval, "bounds must be finite");
  }
  if (lower > upper) {
    fail(ErrorCode::InvalidInterval,
         "lower " + std::to_string(lower) + " exceeds upper " + std::to_string(upper));
  }
  return {lower, upper};
}

MidLogRange midpoint_logrange(const Interval& x) {
  if (!(x.lower < x.upper)) {
    fail(ErrorCode::DegenerateInterval, "log-range needs lower < upper");
  }
  return {x.midpoint(), std::log(x.upper - x.lower)};
}

void validate(const IntervalCurve& curve) {
  const std::size_t n = curve.grid.size();
  if (n == 0) fail(ErrorCode::EmptyGrid, "curve has no grid points");
  for (std::size_t t = 1; t < n; ++t) {
    if (!(curve.grid[t] > curve.grid[t - 1])) {
      fail(ErrorCode::ShapeMismatch, "grid must be strictly increasing");
    }
  }
  if (curve.channels.empty()) fail(ErrorCode::ShapeMismatch, "curve has no channels");
  for (const auto& ch : curve.channels) {
    if (ch.lower.size() != n || ch.upper.size() != n) {
      fail(ErrorCode::ShapeMismatch, "channel length differs from grid length");
    }
    for (std::size_t t = 0; t < n; ++t) make_interval(ch.lower[t], ch.upper[t]);
  }
}

IntervalCurve subsample_grid(const IntervalCurve& curve, std::size_t step) {
  if (step < 1) fail(ErrorCode::InvalidParameter, "subsample step must be >= 1");
  if (step == 1) return curve;
  const std::size_t n = curve.grid.size();
  if (step >= n) {
    fail(ErrorCode::EmptyGrid,
         "step " + std::to_string(step) + " >= grid size " + std::to_string(n));
  }
  IntervalCurve out;
  out.channels.resize(curve.channels.size());
  for (std::size_t t = 0; t < n; t += step) {
    out.grid.push_back(curve.grid[t]);
    for (std::size_t v = 0; v < curve.channels.size(); ++v) {
      out.channels[v].lower.push_back(curve.channels[v].lower[t]);
      out.channels[v].upper.push_back(curve.channels[v].upper[t]);
    }
  }
  return out;
}

IntervalVector curve_to_vector(const IntervalCurve& curve) {
  IntervalVector out;
  out.features.reserve(curve.channels.size() * curve.grid.size());
  for (const auto& ch : curve.channels) {
    for (std::size_t t = 0; t < ch.lower.size(); ++t) {
      out.features.push_back({ch.lower[t], ch.upper[t]});
    }
  }
  return out;
}

}  // namespace ivord
