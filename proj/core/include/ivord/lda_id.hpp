#pragma once

#include <array>
#include <span>
#include <vector>

#include "ivord/interval.hpp"
#include "ivord/linalg.hpp"

namespace ivord {

/// Covariance structures of the Gaussian (midpoint, log-range) model:
///   1 unrestricted
///   2 only var(c_j), var(r*_j) and cov(c_j, r*_j) nonzero
///   3 no midpoint/log-range cross covariance
///   4 diagonal
inline constexpr int kLdaIdConfigurations = 4;

/// Linear discriminant model on z = (c_1..c_K, r*_1..r*_K).
struct LdaIdModel {
  std::size_t num_features = 0;              // K
  std::vector<std::vector<double>> means;    // Q rows of length 2K
  Matrix covariance;                         // selected, conditioned
  std::vector<double> priors;
  int configuration = 1;
  std::array<double, kLdaIdConfigurations> log_likelihood{};
  std::array<double, kLdaIdConfigurations> bic{};

  // derived from the fields above by `finalize`
  std::vector<std::vector<double>> weights;  // Sigma^{-1} mu_g
  std::vector<double> offsets;               // log pi_g - mu_g' Sigma^{-1} mu_g / 2

  int num_classes() const noexcept { return static_cast<int>(means.size()); }
  /// Rebuilds the discriminant coefficients. Throws SingularCovariance.
  void finalize();
};

/// Number of free parameters: Q * 2K class means plus the configuration's
/// free covariance entries.
std::size_t ldaid_num_params(int configuration, std::size_t num_features, int num_classes);

/// Transforms to (c, r*). Throws DegenerateInterval on a zero-width interval.
std::vector<double> midpoint_logrange_features(const IntervalVector& x);

/// Fits all four configurations and keeps the one with the lowest
/// BIC = -2 logL + k ln N (ties go to the lower configuration number).
/// Throws DegenerateInterval, InvalidParameter (class with < 2 members) and
/// SingularCovariance if conditioning cannot rescue the pooled covariance.
LdaIdModel ldaid_fit(std::span<const IntervalVector> x, std::span<const int> y, int num_classes);

/// Same, but forcing one configuration.
LdaIdModel ldaid_fit_configuration(std::span<const IntervalVector> x, std::span<const int> y,
                                   int num_classes, int configuration);

std::vector<double> ldaid_predict_proba(const LdaIdModel& model, const IntervalVector& x);

}  // namespace ivord
