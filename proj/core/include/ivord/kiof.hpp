#pragma once

#include <span>
#include <vector>

#include "ivord/dataset.hpp"
#include "ivord/ordinal_forest.hpp"

namespace ivord {

/// Feature j = exp(-d(x, train_j)^2 / gamma) with d = D^EH (vectors) or
/// multichannel D^FEH (curves).
std::vector<double> kernel_feature_map(std::span<const Observation> train, const Observation& x,
                                       double gamma);

/// Kernel-induced ordinal forest: an ordinal forest over kernel features.
struct KiofModel {
  std::vector<Observation> train;
  double gamma = 1.0;
  OfModel forest;
};

KiofModel kiof_fit(std::span<const Observation> train, std::span<const int> y, int num_classes,
                   double gamma, const OfParams& params, const RngStream& rng);

int kiof_predict(const KiofModel& model, const Observation& x);

}  // namespace ivord
