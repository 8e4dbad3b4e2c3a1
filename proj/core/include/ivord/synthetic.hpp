#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ivord/dataset.hpp"
#include "ivord/rng.hpp"

namespace ivord {

struct ClassLaw {
  double mu1, mu2, sigma1, sigma2, rho;
};

/// Gaussian seeds per class, each widened into two intervals with widths
/// drawn uniformly from [width_lo, width_hi].
struct SyntheticDesign {
  std::string id;
  std::vector<ClassLaw> classes;
  int samples_per_class = 100;
  double width_lo = 1.0;
  double width_hi = 5.0;

  static SyntheticDesign three_class();
  static SyntheticDesign four_class();
  static std::optional<SyntheticDesign> by_name(const std::string& name);
};

/// Classes are emitted in order 1..Q, samples_per_class rows each.
LabeledDataset gen_synthetic(const SyntheticDesign& design, RngStream& rng);

}  // namespace ivord
