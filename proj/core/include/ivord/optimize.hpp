#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ivord {

using ObjectiveFn = std::function<double(std::span<const double>)>;
using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

struct MinimizeOptions {
  double tol = 1e-8;  // on the infinity norm of the gradient
  int max_iter = 200;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// BFGS with Armijo backtracking. Accepted steps never increase the objective.
/// Throws NumericalFailure when f or grad is non-finite at an accepted point.
MinimizeResult minimize(const ObjectiveFn& f, const GradientFn& grad,
                        std::vector<double> x0, MinimizeOptions options = {});

}  // namespace ivord
