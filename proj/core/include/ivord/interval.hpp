#pragma once

#include <cstddef>
#include <vector>

namespace ivord {

/// A closed real interval [lower, upper] with lower <= upper.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool degenerate() const noexcept { return lower == upper; }
  double midpoint() const noexcept { return 0.5 * (lower + upper); }
  double width() const noexcept { return upper - lower; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Validating constructor. Throws InvalidInterval on lower > upper or
/// non-finite bounds.
Interval make_interval(double lower, double upper);

struct MidLogRange {
  double center;
  double log_range;
};

/// (c, r*) = ((l+u)/2, ln(u-l)). Throws DegenerateInterval when u == l.
MidLogRange midpoint_logrange(const Interval& x);

/// One interval-valued observation with K features.
struct IntervalVector {
  std::vector<Interval> features;

  IntervalVector() = default;
  explicit IntervalVector(std::vector<Interval> f) : features(std::move(f)) {}

  std::size_t size() const noexcept { return features.size(); }
  const Interval& operator[](std::size_t k) const { return features[k]; }
  Interval& operator[](std::size_t k) { return features[k]; }

  friend bool operator==(const IntervalVector&, const IntervalVector&) = default;
};

/// Per-channel lower/upper samples on the curve's grid.
struct CurveChannel {
  std::vector<double> lower;
  std::vector<double> upper;

  friend bool operator==(const CurveChannel&, const CurveChannel&) = default;
};

/// Interval-valued function sampled on a strictly increasing grid, with V
/// channels (V = 1 for a univariate curve).
struct IntervalCurve {
  std::vector<double> grid;
  std::vector<CurveChannel> channels;

  std::size_t grid_size() const noexcept { return grid.size(); }
  std::size_t num_channels() const noexcept { return channels.size(); }
  Interval at(std::size_t channel, std::size_t t) const {
    return {channels[channel].lower[t], channels[channel].upper[t]};
  }

  friend bool operator==(const IntervalCurve&, const IntervalCurve&) = default;
};

/// Checks grid monotonicity, channel lengths, finiteness and lower <= upper.
/// Throws InvalidInterval / ShapeMismatch / EmptyGrid.
void validate(const IntervalCurve& curve);

/// Keeps grid indices 0, step, 2*step, ... Throws EmptyGrid when step >= T
/// and InvalidParameter when step < 1.
IntervalCurve subsample_grid(const IntervalCurve& curve, std::size_t step);

/// Channel-major concatenation into K = V*T features.
IntervalVector curve_to_vector(const IntervalCurve& curve);

}  // namespace ivord
