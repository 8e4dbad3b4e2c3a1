#include "ivord/polr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ivord/error.hpp"
#include "ivord/optimize.hpp"

namespace ivord {
namespace {

double log_sigmoid(double z) {
  return z >= 0.0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

std::string to_string(FeatureRecipe recipe) {
  switch (recipe) {
    case FeatureRecipe::Raw: return "raw";
    case FeatureRecipe::Midpoints: return "midpoints";
    case FeatureRecipe::Bounds: return "bounds";
    case FeatureRecipe::LowerBounds: return "lower_bounds";
    case FeatureRecipe::UpperBounds: return "upper_bounds";
    case FeatureRecipe::KpcaProjection: return "kpca_projection";
  }
  return "raw";
}

FeatureRecipe feature_recipe_from_string(const std::string& name) {
  for (auto r : {FeatureRecipe::Raw, FeatureRecipe::Midpoints, FeatureRecipe::Bounds,
                 FeatureRecipe::LowerBounds, FeatureRecipe::UpperBounds,
                 FeatureRecipe::KpcaProjection}) {
    if (to_string(r) == name) return r;
  }
  fail(ErrorCode::SchemaError, "unknown feature recipe '" + name + "'");
}

PolrObjective::PolrObjective(const Matrix& x, std::span<const int> y, int num_classes,
                             double ridge)
    : x_(x), y_(y.begin(), y.end()), p_(x.cols()), q_(num_classes), ridge_(ridge) {
  if (y_.size() != x.rows()) fail(ErrorCode::ShapeMismatch, "label count differs from rows");
}

std::vector<double> PolrObjective::thresholds_from(std::span<const double> theta, std::size_t p) {
  std::vector<double> zeta(theta.size() - p);
  if (zeta.empty()) return zeta;
  zeta[0] = theta[p];
  for (std::size_t j = 1; j < zeta.size(); ++j) zeta[j] = zeta[j - 1] + std::exp(theta[p + j]);
  return zeta;
}

double PolrObjective::value(std::span<const double> theta) const {
  return evaluate(theta, {}, false);
}

void PolrObjective::gradient(std::span<const double> theta, std::span<double> grad) const {
  evaluate(theta, grad, true);
}

double PolrObjective::evaluate(std::span<const double> theta, std::span<double> grad,
                               bool want_grad) const {
  const std::size_t n_thr = static_cast<std::size_t>(q_ - 1);
  const auto zeta = thresholds_from(theta, p_);
  const auto beta = theta.first(p_);
  // gradient w.r.t. beta and zeta (not yet chained to theta)
  std::vector<double> g_beta(p_, 0.0);
  std::vector<double> g_zeta(n_thr, 0.0);

  double nll = 0.0;
  for (std::size_t i = 0; i < x_.rows(); ++i) {
    const double eta = dot(x_.row(i), beta);
    const int y = y_[i];
    double da = 0.0;  // d logP / d(zeta_y - eta)
    double db = 0.0;  // d logP / d(zeta_{y-1} - eta)
    double logp;
    if (q_ == 1) {
      logp = 0.0;
    } else if (y == 1) {
      const double a = zeta[0] - eta;
      logp = log_sigmoid(a);
      da = sigmoid(-a);
    } else if (y == q_) {
      const double b = zeta[n_thr - 1] - eta;
      logp = log_sigmoid(-b);
      db = -sigmoid(b);
    } else {
      const double a = zeta[static_cast<std::size_t>(y - 1)] - eta;
      const double b = zeta[static_cast<std::size_t>(y - 2)] - eta;
      // sigma(a) - sigma(b) = sigma(a) sigma(-b) (1 - e^{b-a})
      logp = log_sigmoid(a) + log_sigmoid(-b) + std::log(-std::expm1(b - a));
      const double inv = 1.0 / std::expm1(a - b);
      da = sigmoid(-a) + inv;
      db = -sigmoid(b) - inv;
    }
    nll -= logp;
    if (want_grad) {
      // d(-logP): eta enters with a minus sign in both arguments
      const double d_eta = da + db;
      for (std::size_t j = 0; j < p_; ++j) g_beta[j] += d_eta * x_(i, j);
      if (y < q_) g_zeta[static_cast<std::size_t>(y - 1)] -= da;
      if (y > 1) g_zeta[static_cast<std::size_t>(y - 2)] -= db;
    }
  }
  double penalty = 0.0;
  for (double b : beta) penalty += b * b;
  const double value = nll + ridge_ * penalty;

  if (want_grad) {
    for (std::size_t j = 0; j < p_; ++j) grad[j] = g_beta[j] + 2.0 * ridge_ * beta[j];
    // zeta_j = theta_p + sum_{m=1..j} exp(theta_{p+m})
    double tail = 0.0;
    for (std::size_t m = n_thr; m-- > 1;) {
      tail += g_zeta[m];
      grad[p_ + m] = tail * std::exp(theta[p_ + m]);
    }
    if (n_thr > 0) grad[p_] = tail + g_zeta[0];
  }
  return value;
}

PolrModel polr_fit(const Matrix& x, std::span<const int> y, int num_classes,
                   const PolrOptions& options) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (y.size() != n) fail(ErrorCode::ShapeMismatch, "label count differs from rows");
  if (num_classes < 2) fail(ErrorCode::InvalidParameter, "POLR needs at least two classes");
  std::vector<std::size_t> counts(static_cast<std::size_t>(num_classes), 0);
  for (int label : y) {
    if (label < 1 || label > num_classes) fail(ErrorCode::InvalidParameter, "label out of range");
    ++counts[static_cast<std::size_t>(label - 1)];
  }
  for (std::size_t q = 0; q < counts.size(); ++q) {
    if (counts[q] == 0) {
      fail(ErrorCode::InvalidParameter, "class " + std::to_string(q + 1) + " absent");
    }
  }
  if (n <= p + static_cast<std::size_t>(num_classes)) {
    fail(ErrorCode::InvalidParameter, "POLR needs N > p + Q");
  }

  // Standardize columns for conditioning; mapped back after the fit.
  std::vector<double> center(p, 0.0), scale(p, 1.0);
  Matrix z = x;
  for (std::size_t j = 0; j < p; ++j) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m += x(i, j);
    m /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (x(i, j) - m) * (x(i, j) - m);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    center[j] = m;
    scale[j] = sd > 0.0 ? sd : 1.0;
    for (std::size_t i = 0; i < n; ++i) z(i, j) = (x(i, j) - m) / scale[j];
  }

  const PolrObjective objective(z, y, num_classes, options.ridge);
  const auto inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> theta(objective.num_params(), 0.0);
  {
    double cum = 0.0;
    double prev = 0.0;
    for (std::size_t q = 0; q + 1 < counts.size(); ++q) {
      cum += static_cast<double>(counts[q]) * inv_n;
      const double zeta = std::log(cum / (1.0 - cum));
      if (q == 0) {
        theta[p] = zeta;
      } else {
        theta[p + q] = std::log(std::max(zeta - prev, 1e-3));
      }
      prev = q == 0 ? zeta : prev + std::exp(theta[p + q]);
    }
  }

  const auto result = minimize(
      [&](std::span<const double> t) { return objective.value(t) * inv_n; },
      [&](std::span<const double> t, std::span<double> g) {
        objective.gradient(t, g);
        for (double& v : g) v *= inv_n;
      },
      theta, MinimizeOptions{options.tol, options.max_iter});
  if (!result.converged) {
    fail(ErrorCode::FitFailed, "POLR optimizer stopped after " +
                                   std::to_string(result.iterations) +
                                   " iterations with gradient norm " +
                                   std::to_string(result.grad_norm) +
                                   " (possible separation)");
  }
  // The ridge keeps separated data finite; report separation explicitly.
  {
    std::vector<double> lo(counts.size(), INFINITY), hi(counts.size(), -INFINITY);
    for (std::size_t i = 0; i < n; ++i) {
      const double eta = dot(z.row(i), std::span<const double>(result.x).first(p));
      const auto q = static_cast<std::size_t>(y[i] - 1);
      lo[q] = std::min(lo[q], eta);
      hi[q] = std::max(hi[q], eta);
    }
    bool separated = true;
    for (std::size_t q = 0; q + 1 < counts.size(); ++q) separated = separated && hi[q] < lo[q + 1];
    if (separated) {
      fail(ErrorCode::FitFailed, "complete separation: classes are perfectly ordered by the "
                                 "linear predictor, so the unpenalized likelihood has no maximum");
    }
  }

  PolrModel model;
  model.coefficients.resize(p);
  double shift = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    model.coefficients[j] = result.x[j] / scale[j];
    shift += model.coefficients[j] * center[j];
  }
  model.thresholds = PolrObjective::thresholds_from(result.x, p);
  for (double& zeta : model.thresholds) zeta += shift;
  for (std::size_t q = 1; q < model.thresholds.size(); ++q) {
    if (!(model.thresholds[q] > model.thresholds[q - 1])) {
      fail(ErrorCode::FitFailed, "thresholds collapsed while mapping back to feature units");
    }
  }
  return model;
}

std::vector<double> polr_predict_proba(const PolrModel& model, std::span<const double> x) {
  if (x.size() != model.coefficients.size()) {
    fail(ErrorCode::ShapeMismatch, "feature count " + std::to_string(x.size()) +
                                       " differs from model's " +
                                       std::to_string(model.coefficients.size()));
  }
  const double eta = dot(model.coefficients, x);
  const std::size_t q = model.thresholds.size() + 1;
  std::vector<double> probs(q);
  double prev = 0.0;
  for (std::size_t j = 0; j + 1 < q; ++j) {
    const double cum = sigmoid(model.thresholds[j] - eta);
    probs[j] = std::max(0.0, cum - prev);
    prev = std::max(prev, cum);
  }
  probs[q - 1] = std::max(0.0, 1.0 - prev);
  return probs;
}

int argmax_low(std::span<const double> probs) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < probs.size(); ++j)
    if (probs[j] > probs[best]) best = j;
  return static_cast<int>(best) + 1;
}

}  // namespace ivord
