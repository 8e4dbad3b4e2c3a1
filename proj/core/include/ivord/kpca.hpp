#pragma once

#include <span>
#include <vector>

#include "ivord/dataset.hpp"
#include "ivord/linalg.hpp"
#include "ivord/polr.hpp"

namespace ivord {

struct KpcaSelection {
  double mass = 0.95;               // retained share of the positive spectrum
  std::size_t max_components = 10;  // hard cap
  std::size_t fixed = 0;            // if > 0, keep exactly this many (still capped)
};

/// Kernel PCA on the interval RBF kernel (K_I for vectors, K_FI for curves).
struct KpcaModel {
  std::vector<Observation> train;
  double gamma = 1.0;
  std::vector<double> eigenvalues;  // retained, descending, all > 0
  Matrix eigenvectors;              // N x d, unit columns
  std::vector<double> column_means; // of the uncentered training kernel
  double grand_mean = 0.0;
  Matrix train_projections;         // N x d

  std::size_t dimension() const noexcept { return eigenvalues.size(); }
};

/// Double-centers the training kernel, eigendecomposes it and keeps the
/// leading components whose eigenvalues exceed 1e-10 * lambda_max. Throws
/// DegenerateKernel when no eigenvalue is positive, InvalidParameter when
/// N < 2.
KpcaModel kpca_fit(std::span<const Observation> train, double gamma,
                   const KpcaSelection& selection = {});

/// Same, from a precomputed kernel matrix of `train`.
KpcaModel kpca_fit_from_kernel(std::span<const Observation> train, const Matrix& kernel,
                               double gamma, const KpcaSelection& selection);

/// Projection of the consistently centered kernel column of x, scaled by
/// lambda^{-1/2}.
std::vector<double> kpca_transform(const KpcaModel& model, const Observation& x);

/// Keeps only the first d components.
KpcaModel kpca_truncate(const KpcaModel& model, std::size_t d);

struct KpcaPolrModel {
  KpcaModel kpca;
  PolrModel polr;
};

/// Component cap is min(max_components, N - Q - 1). When POLR fails to fit,
/// the dimension is halved once before giving up.
KpcaPolrModel kpca_polr_fit(std::span<const Observation> train, std::span<const int> y,
                            int num_classes, double gamma, const KpcaSelection& selection = {},
                            const PolrOptions& polr_options = {});

std::vector<double> kpca_polr_predict_proba(const KpcaPolrModel& model, const Observation& x);

}  // namespace ivord
