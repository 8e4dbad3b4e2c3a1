#pragma once

#include <span>

namespace ivord {

/// Smallest class whose cumulative weight, accumulated in class order,
/// reaches half the total. Throws InvalidParameter on length mismatch,
/// negative weights or zero total weight.
int weighted_median(std::span<const int> classes, std::span<const double> weights);

}  // namespace ivord
