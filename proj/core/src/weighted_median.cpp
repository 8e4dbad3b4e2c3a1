#include "ivord/weighted_median.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ivord/error.hpp"

namespace ivord {

int weighted_median(std::span<const int> classes, std::span<const double> weights) {
  if (classes.size() != weights.size()) {
    fail(ErrorCode::InvalidParameter, "classes and weights differ in length");
  }
  std::map<int, double> per_class;
  double total = 0.0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      fail(ErrorCode::InvalidParameter, "weights must be finite and nonnegative");
    }
    per_class[classes[i]] += weights[i];
    total += weights[i];
  }
  if (!(total > 0.0)) fail(ErrorCode::InvalidParameter, "total weight is zero");

  // Exact ties at one half go to the lower class; the slack absorbs rounding
  // from summing the same weights in a different order.
  const double half = 0.5 * total - 1e-12 * total;
  double cumulative = 0.0;
  for (const auto& [cls, w] : per_class) {
    cumulative += w;
    if (cumulative >= half) return cls;
  }
  return per_class.rbegin()->first;
}

}  // namespace ivord
