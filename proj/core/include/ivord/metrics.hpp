#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ivord/dataset.hpp"

namespace ivord {

enum class VectorDistance { H, EH };
enum class CurveDistance { FH, FEH };

/// Hausdorff distances between interval vectors: per-feature
/// D_k = max(|l_x - l_y|, |u_x - u_y|), summed (H) or root-sum-squared (EH).
double dist_interval(const IntervalVector& x, const IntervalVector& y, VectorDistance kind);

/// Functional Hausdorff distances integrated with the trapezoidal rule on the
/// shared grid. Several channels combine as sqrt(sum of squared per-channel
/// distances).
double dist_curve(const IntervalCurve& x, const IntervalCurve& y, CurveDistance kind);

/// Distance used by the kernel methods and DI+wkNN: EH for vectors, FEH for
/// curves. Throws ShapeMismatch on mixed kinds.
double interval_distance(const Observation& x, const Observation& y);

/// exp(-d^2 / gamma). Throws InvalidParameter when gamma <= 0 or d < 0.
double kernel_from_dist(double d, double gamma);

enum class PairwiseKind { Distance, Kernel };

struct PairwiseMatrix {
  std::size_t n = 0;
  PairwiseKind kind = PairwiseKind::Distance;
  std::vector<double> entries;  // row-major n x n

  double operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

struct PairwiseOptions {
  PairwiseKind kind = PairwiseKind::Distance;
  double gamma = 1.0;
  unsigned jobs = 1;
};

/// Symmetric matrix of interval_distance (or its kernel) over all pairs.
/// Output does not depend on `jobs`.
PairwiseMatrix pairwise(std::span<const Observation> data, const PairwiseOptions& options = {});

/// CSV dump with an `id` header row and column.
void write_matrix_csv(std::ostream& out, const PairwiseMatrix& m,
                      std::span<const std::string> ids);

}  // namespace ivord
