#include "ivord/kpca.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ivord/error.hpp"
#include "ivord/metrics.hpp"

namespace ivord {

KpcaModel kpca_fit(std::span<const Observation> train, double gamma,
                   const KpcaSelection& selection) {
  const auto pm = pairwise(train, {PairwiseKind::Kernel, gamma, 1});
  Matrix kernel(pm.n, pm.n);
  for (std::size_t i = 0; i < pm.n; ++i)
    for (std::size_t j = 0; j < pm.n; ++j) kernel(i, j) = pm(i, j);
  return kpca_fit_from_kernel(train, kernel, gamma, selection);
}

KpcaModel kpca_fit_from_kernel(std::span<const Observation> train, const Matrix& kernel,
                               double gamma, const KpcaSelection& selection) {
  const std::size_t n = train.size();
  if (n < 2) fail(ErrorCode::InvalidParameter, "KPCA needs at least 2 observations");
  if (kernel.rows() != n || kernel.cols() != n) {
    fail(ErrorCode::ShapeMismatch, "kernel matrix size differs from training size");
  }

  KpcaModel model;
  model.train.assign(train.begin(), train.end());
  model.gamma = gamma;
  model.column_means.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) model.column_means[j] += kernel(i, j);
  for (double& m : model.column_means) m /= static_cast<double>(n);
  for (double m : model.column_means) model.grand_mean += m;
  model.grand_mean /= static_cast<double>(n);

  Matrix centered(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      centered(i, j) = kernel(i, j) - model.column_means[i] - model.column_means[j] +
                       model.grand_mean;
    }

  const auto eig = sym_eigen(centered);
  const double top = eig.values.front();
  if (!(top > 0.0)) fail(ErrorCode::DegenerateKernel, "centered kernel has no positive eigenvalue");

  std::size_t usable = 0;
  double positive_mass = 0.0;
  while (usable < n && eig.values[usable] > 1e-10 * top) {
    positive_mass += eig.values[usable];
    ++usable;
  }
  std::size_t d = 0;
  if (selection.fixed > 0) {
    d = selection.fixed;
  } else {
    double acc = 0.0;
    while (d < usable && acc < selection.mass * positive_mass) acc += eig.values[d++];
  }
  d = std::min({d, usable, selection.max_components});
  if (d == 0) fail(ErrorCode::DegenerateKernel, "no kernel component retained");

  model.eigenvalues.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(d));
  model.eigenvectors = Matrix(n, d);
  model.train_projections = Matrix(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < d; ++m) {
      model.eigenvectors(i, m) = eig.vectors(i, m);
      model.train_projections(i, m) = std::sqrt(model.eigenvalues[m]) * eig.vectors(i, m);
    }
  return model;
}

std::vector<double> kpca_transform(const KpcaModel& model, const Observation& x) {
  const std::size_t n = model.train.size();
  std::vector<double> k(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = kernel_from_dist(interval_distance(x, model.train[i]), model.gamma);
    mean += k[i];
  }
  mean /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) k[i] += -mean - model.column_means[i] + model.grand_mean;

  std::vector<double> out(model.dimension(), 0.0);
  for (std::size_t m = 0; m < out.size(); ++m) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += k[i] * model.eigenvectors(i, m);
    out[m] = s / std::sqrt(model.eigenvalues[m]);
  }
  return out;
}

KpcaModel kpca_truncate(const KpcaModel& model, std::size_t d) {
  if (d == 0 || d > model.dimension()) fail(ErrorCode::InvalidParameter, "bad KPCA dimension");
  KpcaModel out = model;
  const std::size_t n = model.train.size();
  out.eigenvalues.resize(d);
  out.eigenvectors = Matrix(n, d);
  out.train_projections = Matrix(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < d; ++m) {
      out.eigenvectors(i, m) = model.eigenvectors(i, m);
      out.train_projections(i, m) = model.train_projections(i, m);
    }
  return out;
}

KpcaPolrModel kpca_polr_fit(std::span<const Observation> train, std::span<const int> y,
                            int num_classes, double gamma, const KpcaSelection& selection,
                            const PolrOptions& polr_options) {
  const std::size_t n = train.size();
  const auto q = static_cast<std::size_t>(num_classes);
  if (n < q + 3) fail(ErrorCode::InvalidParameter, "KPCA+POLR needs N >= Q + 3");
  KpcaSelection capped = selection;
  capped.max_components = std::min(selection.max_components, n - q - 1);

  KpcaPolrModel model{kpca_fit(train, gamma, capped), {}};
  try {
    model.polr = polr_fit(model.kpca.train_projections, y, num_classes, polr_options);
  } catch (const Error& first) {
    if (first.code() != ErrorCode::FitFailed || model.kpca.dimension() < 2) throw;
    model.kpca = kpca_truncate(model.kpca, model.kpca.dimension() / 2);
    try {
      model.polr = polr_fit(model.kpca.train_projections, y, num_classes, polr_options);
    } catch (const Error& second) {
      fail(ErrorCode::FitFailed, std::string("KPCA+POLR failed at full and halved dimension: ") +
                                     second.what());
    }
  }
  model.polr.recipe = FeatureRecipe::KpcaProjection;
  return model;
}

std::vector<double> kpca_polr_predict_proba(const KpcaPolrModel& model, const Observation& x) {
  return polr_predict_proba(model.polr, kpca_transform(model.kpca, x));
}

}  // namespace ivord
