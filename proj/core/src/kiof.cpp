#include "ivord/kiof.hpp"

#include "ivord/metrics.hpp"

namespace ivord {

std::vector<double> kernel_feature_map(std::span<const Observation> train, const Observation& x,
                                       double gamma) {
  std::vector<double> out(train.size());
  for (std::size_t j = 0; j < train.size(); ++j) {
    out[j] = kernel_from_dist(interval_distance(x, train[j]), gamma);
  }
  return out;
}

KiofModel kiof_fit(std::span<const Observation> train, std::span<const int> y, int num_classes,
                   double gamma, const OfParams& params, const RngStream& rng) {
  const auto pm = pairwise(train, {PairwiseKind::Kernel, gamma, params.jobs});
  Matrix features(pm.n, pm.n);
  for (std::size_t i = 0; i < pm.n; ++i)
    for (std::size_t j = 0; j < pm.n; ++j) features(i, j) = pm(i, j);

  KiofModel model;
  model.train.assign(train.begin(), train.end());
  model.gamma = gamma;
  model.forest = of_fit(features, y, num_classes, params, rng);
  return model;
}

int kiof_predict(const KiofModel& model, const Observation& x) {
  return of_predict(model.forest, kernel_feature_map(model.train, x, model.gamma));
}

}  // namespace ivord
