#include "ivord/synthetic.hpp"

#include <string>

#include "ivord/error.hpp"

namespace ivord {

SyntheticDesign SyntheticDesign::three_class() {
  SyntheticDesign d;
  d.id = "three_class";
  d.classes = {{25, 50, 6, 3, 0}, {38, 40, 3, 3, 0}, {45, 35, 5, 5, 0}};
  return d;
}

SyntheticDesign SyntheticDesign::four_class() {
  SyntheticDesign d;
  d.id = "four_class";
  d.classes = {{25, 50, 6, 3, 0}, {30, 45, 5, 5, 0}, {38, 40, 3, 3, 0}, {45, 35, 2, 3, 0}};
  return d;
}

std::optional<SyntheticDesign> SyntheticDesign::by_name(const std::string& name) {
  if (name == "three_class") return three_class();
  if (name == "four_class") return four_class();
  return std::nullopt;
}

LabeledDataset gen_synthetic(const SyntheticDesign& design, RngStream& rng) {
  if (design.classes.size() < 2 || design.samples_per_class < 1 ||
      !(design.width_lo >= 0.0 && design.width_hi >= design.width_lo)) {
    fail(ErrorCode::InvalidParameter, "invalid synthetic design");
  }
  LabeledDataset out;
  out.num_classes = static_cast<int>(design.classes.size());
  std::size_t row = 0;
  for (std::size_t q = 0; q < design.classes.size(); ++q) {
    const auto& law = design.classes[q];
    for (int i = 0; i < design.samples_per_class; ++i) {
      const auto [z1, z2] = mvn_sample(rng, {law.mu1, law.mu2}, law.sigma1, law.sigma2, law.rho);
      const double g1 = rng.uniform(design.width_lo, design.width_hi);
      const double g2 = rng.uniform(design.width_lo, design.width_hi);
      IntervalVector x;
      x.features = {{z1 - g1 / 2, z1 + g1 / 2}, {z2 - g2 / 2, z2 + g2 / 2}};
      out.ids.push_back("s" + std::to_string(++row));
      out.observations.emplace_back(std::move(x));
      out.labels.push_back(static_cast<int>(q) + 1);
    }
  }
  return out;
}

}  // namespace ivord
