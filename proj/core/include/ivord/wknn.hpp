#pragma once

#include <span>
#include <string>

#include "ivord/dataset.hpp"

namespace ivord {

enum class WeightKernel { Triangular, Rectangular };

std::string to_string(WeightKernel kernel);
WeightKernel weight_kernel_from_string(const std::string& name);

struct WknnConfig {
  int k = 7;
  WeightKernel kernel = WeightKernel::Triangular;
};

/// Weighted-median vote of the k nearest neighbours given distances from the
/// query to every training point. Distances are normalized by the (k+1)-th
/// smallest; ties at the boundary go to the lower training index. A zero
/// (k+1)-th distance, or triangular weights that all vanish, give every
/// neighbour weight 1. Throws InvalidParameter unless 1 <= k < N.
int wknn_vote(std::span<const double> distances, std::span<const int> labels,
              const WknnConfig& config);

/// Distances are D^EH for interval vectors and D^FEH for curves.
int wknn_predict(std::span<const Observation> train, std::span<const int> labels,
                 const WknnConfig& config, const Observation& x);

}  // namespace ivord
