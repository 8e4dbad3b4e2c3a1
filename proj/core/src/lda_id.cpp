#include "ivord/lda_id.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "ivord/error.hpp"

namespace ivord {
namespace {

bool allowed(int configuration, std::size_t i, std::size_t j, std::size_t k) {
  switch (configuration) {
    case 1: return true;
    case 2: return i % k == j % k;
    case 3: return i / k == j / k;
    case 4: return i == j;
    default: fail(ErrorCode::InvalidParameter, "configuration must be 1..4");
  }
}

struct Moments {
  std::vector<std::vector<double>> means;
  Matrix scatter;  // pooled within-class covariance, divisor N
  std::vector<double> priors;
  std::size_t n = 0;
};

Moments pooled_moments(std::span<const IntervalVector> x, std::span<const int> y, int num_classes) {
  if (x.size() != y.size()) fail(ErrorCode::ShapeMismatch, "label count differs from rows");
  if (x.empty()) fail(ErrorCode::InvalidParameter, "no training data");
  const std::size_t k = x.front().size();
  const std::size_t d = 2 * k;
  const auto q = static_cast<std::size_t>(num_classes);

  std::vector<std::vector<double>> z;
  z.reserve(x.size());
  for (const auto& obs : x) {
    if (obs.size() != k) fail(ErrorCode::ShapeMismatch, "observations differ in feature count");
    z.push_back(midpoint_logrange_features(obs));
  }

  Moments m;
  m.n = x.size();
  m.means.assign(q, std::vector<double>(d, 0.0));
  std::vector<std::size_t> counts(q, 0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (y[i] < 1 || y[i] > num_classes) fail(ErrorCode::InvalidParameter, "label out of range");
    const auto g = static_cast<std::size_t>(y[i] - 1);
    ++counts[g];
    for (std::size_t j = 0; j < d; ++j) m.means[g][j] += z[i][j];
  }
  for (std::size_t g = 0; g < q; ++g) {
    if (counts[g] < 2) {
      fail(ErrorCode::InvalidParameter,
           "LDA-ID needs at least 2 observations in class " + std::to_string(g + 1));
    }
    for (double& v : m.means[g]) v /= static_cast<double>(counts[g]);
  }
  m.priors.resize(q);
  for (std::size_t g = 0; g < q; ++g) {
    m.priors[g] = static_cast<double>(counts[g]) / static_cast<double>(m.n);
  }
  m.scatter = Matrix(d, d);
  std::vector<double> r(d);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto& mu = m.means[static_cast<std::size_t>(y[i] - 1)];
    for (std::size_t j = 0; j < d; ++j) r[j] = z[i][j] - mu[j];
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a; b < d; ++b) m.scatter(a, b) += r[a] * r[b];
  }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) {
      m.scatter(a, b) /= static_cast<double>(m.n);
      m.scatter(b, a) = m.scatter(a, b);
    }
  return m;
}

Matrix masked(const Matrix& s, int configuration, std::size_t k) {
  Matrix out = s;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (!allowed(configuration, i, j, k)) out(i, j) = 0.0;
  return out;
}

Matrix conditioned(const Matrix& sigma) {
  Matrix out = sigma;
  const double ridge = 1e-8 * sigma.trace() / static_cast<double>(sigma.rows());
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) += ridge;
  return out;
}

// Gaussian log-likelihood of the data at the class means and covariance sigma.
double log_likelihood(const Matrix& sigma, const Matrix& scatter, std::size_t n) {
  const Cholesky chol(sigma);
  const Matrix inv = chol.inverse();
  double tr = 0.0;
  for (std::size_t i = 0; i < sigma.rows(); ++i)
    for (std::size_t j = 0; j < sigma.cols(); ++j) tr += inv(i, j) * scatter(j, i);
  const auto d = static_cast<double>(sigma.rows());
  return -0.5 * static_cast<double>(n) *
         (d * std::log(2.0 * std::numbers::pi) + chol.log_determinant() + tr);
}

LdaIdModel build(const Moments& m, std::size_t k, int configuration) {
  LdaIdModel model;
  model.num_features = k;
  model.means = m.means;
  model.priors = m.priors;
  model.configuration = configuration;
  model.covariance = conditioned(masked(m.scatter, configuration, k));
  model.finalize();
  return model;
}

}  // namespace

void LdaIdModel::finalize() {
  std::optional<Cholesky> chol;
  try {
    chol.emplace(covariance);
  } catch (const Error&) {
    fail(ErrorCode::SingularCovariance, "pooled covariance is singular after conditioning");
  }
  weights.clear();
  offsets.clear();
  for (std::size_t g = 0; g < means.size(); ++g) {
    auto w = chol->solve(means[g]);
    offsets.push_back(std::log(priors[g]) - 0.5 * dot(w, means[g]));
    weights.push_back(std::move(w));
  }
}

std::size_t ldaid_num_params(int configuration, std::size_t num_features, int num_classes) {
  const std::size_t d = 2 * num_features;
  std::size_t free = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) free += allowed(configuration, i, j, num_features);
  return static_cast<std::size_t>(num_classes) * d + free;
}

std::vector<double> midpoint_logrange_features(const IntervalVector& x) {
  const std::size_t k = x.size();
  std::vector<double> z(2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto [c, r] = midpoint_logrange(x[j]);
    z[j] = c;
    z[k + j] = r;
  }
  return z;
}

LdaIdModel ldaid_fit_configuration(std::span<const IntervalVector> x, std::span<const int> y,
                                   int num_classes, int configuration) {
  const Moments m = pooled_moments(x, y, num_classes);
  return build(m, x.front().size(), configuration);
}

LdaIdModel ldaid_fit(std::span<const IntervalVector> x, std::span<const int> y, int num_classes) {
  const Moments m = pooled_moments(x, y, num_classes);
  const std::size_t k = x.front().size();
  const double log_n = std::log(static_cast<double>(m.n));

  std::array<double, kLdaIdConfigurations> ll{};
  std::array<double, kLdaIdConfigurations> bic{};
  int best = 0;
  for (int c = 1; c <= kLdaIdConfigurations; ++c) {
    const Matrix sigma = masked(m.scatter, c, k);
    double value;
    try {
      value = log_likelihood(sigma, m.scatter, m.n);
    } catch (const Error&) {
      value = log_likelihood(conditioned(sigma), m.scatter, m.n);
    }
    const auto idx = static_cast<std::size_t>(c - 1);
    ll[idx] = value;
    bic[idx] = -2.0 * value + static_cast<double>(ldaid_num_params(c, k, num_classes)) * log_n;
    if (best == 0 || bic[idx] < bic[static_cast<std::size_t>(best - 1)]) best = c;
  }
  LdaIdModel model = build(m, k, best);
  model.log_likelihood = ll;
  model.bic = bic;
  return model;
}

std::vector<double> ldaid_predict_proba(const LdaIdModel& model, const IntervalVector& x) {
  if (x.size() != model.num_features) {
    fail(ErrorCode::ShapeMismatch, "feature count differs from the fitted model");
  }
  const auto z = midpoint_logrange_features(x);
  std::vector<double> score(model.means.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < score.size(); ++g) {
    score[g] = dot(model.weights[g], z) + model.offsets[g];
    top = std::max(top, score[g]);
  }
  double total = 0.0;
  for (double& s : score) {
    s = std::exp(s - top);
    total += s;
  }
  for (double& s : score) s /= total;
  return score;
}

}  // namespace ivord
