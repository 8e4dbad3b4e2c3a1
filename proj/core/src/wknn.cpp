#include "ivord/wknn.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "ivord/error.hpp"
#include "ivord/metrics.hpp"
#include "ivord/weighted_median.hpp"

namespace ivord {

std::string to_string(WeightKernel kernel) {
  return kernel == WeightKernel::Triangular ? "triangular" : "rectangular";
}

WeightKernel weight_kernel_from_string(const std::string& name) {
  if (name == "triangular") return WeightKernel::Triangular;
  if (name == "rectangular") return WeightKernel::Rectangular;
  fail(ErrorCode::InvalidParameter, "unknown weight kernel '" + name + "'");
}

int wknn_vote(std::span<const double> distances, std::span<const int> labels,
              const WknnConfig& config) {
  if (distances.size() != labels.size()) {
    fail(ErrorCode::ShapeMismatch, "distance count differs from label count");
  }
  const auto k = static_cast<std::size_t>(config.k);
  if (config.k < 1 || k + 1 > distances.size()) {
    fail(ErrorCode::InvalidParameter, "wkNN needs 1 <= k and k + 1 <= N_train");
  }
  std::vector<std::size_t> order(distances.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k + 1), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return distances[a] < distances[b] ||
                             (distances[a] == distances[b] && a < b);
                    });

  const double denom = distances[order[k]];
  std::vector<int> classes(k);
  std::vector<double> weights(k, 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    classes[i] = labels[order[i]];
    if (config.kernel == WeightKernel::Triangular && denom > 0.0) {
      weights[i] = std::max(0.0, 1.0 - distances[order[i]] / denom);
    }
    total += weights[i];
  }
  if (!(total > 0.0)) std::fill(weights.begin(), weights.end(), 1.0);
  return weighted_median(classes, weights);
}

int wknn_predict(std::span<const Observation> train, std::span<const int> labels,
                 const WknnConfig& config, const Observation& x) {
  std::vector<double> d(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) d[i] = interval_distance(x, train[i]);
  return wknn_vote(d, labels, config);
}

}  // namespace ivord
