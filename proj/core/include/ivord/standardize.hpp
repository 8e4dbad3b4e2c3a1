#pragma once

#include <vector>

#include "ivord/dataset.hpp"

namespace ivord {

/// Pointwise mean and standard deviation of midpoint curves, indexed
/// [channel][grid point].
struct StandardizationParams {
  std::vector<double> grid;
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> sd;
};

/// Uses the sample sd (denominator N-1). Throws ZeroVariance when any
/// pointwise sd is zero.
StandardizationParams standardize_curves_fit(const LabeledDataset& train);

/// Maps both bounds through (v - mean) / sd. Throws ShapeMismatch when the
/// grid or channel count differs from the fitted parameters.
IntervalCurve standardize_curves_apply(const StandardizationParams& params,
                                       const IntervalCurve& curve);

LabeledDataset standardize_curves_apply(const StandardizationParams& params,
                                        const LabeledDataset& data);

}  // namespace ivord
