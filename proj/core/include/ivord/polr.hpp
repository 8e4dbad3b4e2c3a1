#pragma once

#include <span>
#include <string>
#include <vector>

#include "ivord/linalg.hpp"

namespace ivord {

/// Which real features a POLR model consumes.
enum class FeatureRecipe { Raw, Midpoints, Bounds, LowerBounds, UpperBounds, KpcaProjection };

std::string to_string(FeatureRecipe recipe);
FeatureRecipe feature_recipe_from_string(const std::string& name);

/// Proportional-odds model: logit P(y <= q | x) = zeta_q - beta'x.
struct PolrModel {
  std::vector<double> thresholds;    // zeta_1 < ... < zeta_{Q-1}
  std::vector<double> coefficients;  // beta
  FeatureRecipe recipe = FeatureRecipe::Raw;

  int num_classes() const noexcept { return static_cast<int>(thresholds.size()) + 1; }
};

struct PolrOptions {
  double ridge = 1e-6;  // on beta, in standardized feature units
  double tol = 1e-8;
  int max_iter = 200;
};

/// Penalized negative log-likelihood in the unconstrained parameterization
/// theta = (beta_1..beta_p, zeta_1, log(zeta_2 - zeta_1), ..., log(zeta_{Q-1} - zeta_{Q-2})).
class PolrObjective {
 public:
  PolrObjective(const Matrix& x, std::span<const int> y, int num_classes, double ridge);

  std::size_t num_params() const noexcept { return p_ + static_cast<std::size_t>(q_ - 1); }
  double value(std::span<const double> theta) const;
  void gradient(std::span<const double> theta, std::span<double> grad) const;

  static std::vector<double> thresholds_from(std::span<const double> theta, std::size_t p);

 private:
  double evaluate(std::span<const double> theta, std::span<double> grad, bool want_grad) const;

  const Matrix& x_;
  std::vector<int> y_;
  std::size_t p_;
  int q_;
  double ridge_;
};

/// Maximum penalized likelihood fit via BFGS. Throws InvalidParameter on
/// absent classes or N <= p + Q, FitFailed when the optimizer does not
/// converge (complete separation included).
PolrModel polr_fit(const Matrix& x, std::span<const int> y, int num_classes,
                   const PolrOptions& options = {});

/// Class probabilities; entries >= 0 summing to 1. Throws ShapeMismatch on
/// dimension mismatch.
std::vector<double> polr_predict_proba(const PolrModel& model, std::span<const double> x);

/// Argmax with ties resolved to the lower class.
int argmax_low(std::span<const double> probs);

}  // namespace ivord
