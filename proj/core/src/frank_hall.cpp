#include "ivord/frank_hall.hpp"

#include <algorithm>

namespace ivord {

std::vector<double> fh_assemble(std::span<const double> exceed_probs) {
  const std::size_t q = exceed_probs.size() + 1;
  std::vector<double> probs(q);
  probs[0] = 1.0 - exceed_probs[0];
  for (std::size_t j = 1; j + 1 < q; ++j) probs[j] = exceed_probs[j - 1] - exceed_probs[j];
  probs[q - 1] = exceed_probs[q - 2];

  double total = 0.0;
  for (double& p : probs) {
    p = std::max(p, 0.0);
    total += p;
  }
  if (!(total > 0.0)) {
    std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(q));
    return probs;
  }
  for (double& p : probs) p /= total;
  return probs;
}

FhLdaIdModel fh_lda_id_fit(std::span<const IntervalVector> x, std::span<const int> y,
                           int num_classes) {
  return fh_fit(x, y, num_classes,
                [](std::span<const IntervalVector> xs, std::span<const int> labels) {
                  return ldaid_fit(xs, labels, 2);
                });
}

std::vector<double> fh_lda_id_predict_proba(const FhLdaIdModel& model, const IntervalVector& x) {
  return fh_predict_proba(model, x, [](const LdaIdModel& sub, const IntervalVector& obs) {
    return ldaid_predict_proba(sub, obs)[1];
  });
}

}  // namespace ivord
