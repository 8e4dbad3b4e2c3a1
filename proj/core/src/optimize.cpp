#include "ivord/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ivord/error.hpp"

namespace ivord {
namespace {

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

MinimizeResult minimize(const ObjectiveFn& f, const GradientFn& grad, std::vector<double> x0,
                        MinimizeOptions options) {
  const std::size_t n = x0.size();
  MinimizeResult res;
  res.x = std::move(x0);
  std::vector<double> g(n), g_new(n), x_new(n), dir(n), s(n), y(n), hy(n);

  res.value = f(res.x);
  grad(res.x, g);
  if (!std::isfinite(res.value) || !all_finite(g)) {
    fail(ErrorCode::NumericalFailure, "objective or gradient not finite at start");
  }

  // inverse Hessian approximation, row-major
  std::vector<double> h(n * n, 0.0);
  auto reset_h = [&](double scale) {
    std::fill(h.begin(), h.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) h[i * n + i] = scale;
  };
  reset_h(1.0);
  bool fresh = true;

  for (res.iterations = 0; res.iterations < options.max_iter; ++res.iterations) {
    res.grad_norm = inf_norm(g);
    if (res.grad_norm <= options.tol) {
      res.converged = true;
      return res;
    }

    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = 0.0;
      for (std::size_t j = 0; j < n; ++j) d -= h[i * n + j] * g[j];
      dir[i] = d;
      slope += d * g[i];
    }
    if (!(slope < 0.0)) {
      reset_h(1.0);
      fresh = true;
      for (std::size_t i = 0; i < n; ++i) dir[i] = -g[i];
      slope = -std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
    }

    double step = 1.0;
    bool accepted = false;
    double f_new = 0.0;
    for (int k = 0; k < 60; ++k) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = res.x[i] + step * dir[i];
      f_new = f(x_new);
      if (std::isfinite(f_new) && f_new <= res.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (fresh) break;  // steepest descent cannot make progress either
      reset_h(1.0);
      fresh = true;
      continue;
    }

    grad(x_new, g_new);
    if (!all_finite(g_new)) fail(ErrorCode::NumericalFailure, "gradient not finite");

    double sy = 0.0;
    double yy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - res.x[i];
      y[i] = g_new[i] - g[i];
      sy += s[i] * y[i];
      yy += y[i] * y[i];
    }
    res.x.swap(x_new);
    g.swap(g_new);
    res.value = f_new;

    if (sy > 1e-12 * std::sqrt(yy) * std::sqrt(std::inner_product(s.begin(), s.end(), s.begin(), 0.0))) {
      if (fresh) reset_h(sy / yy);
      fresh = false;
      // H <- (I - rho s y') H (I - rho y s') + rho s s'
      const double rho = 1.0 / sy;
      double yhy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double v = 0.0;
        for (std::size_t j = 0; j < n; ++j) v += h[i * n + j] * y[j];
        hy[i] = v;
        yhy += y[i] * v;
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          h[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) +
                          (rho * rho * yhy + rho) * s[i] * s[j];
        }
    }
  }
  res.grad_norm = inf_norm(g);
  res.converged = res.grad_norm <= options.tol;
  return res;
}

}  // namespace ivord
