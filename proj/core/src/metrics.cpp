#include "ivord/metrics.hpp"

#include <cmath>
#include <ostream>
#include <variant>

#include "ivord/error.hpp"
#include "ivord/parallel.hpp"

namespace ivord {
namespace {

double trapezoid(std::span<const double> grid, std::span<const double> values) {
  double s = 0.0;
  for (std::size_t t = 1; t < grid.size(); ++t) {
    s += 0.5 * (grid[t] - grid[t - 1]) * (values[t] + values[t - 1]);
  }
  return s;
}

}  // namespace

double dist_interval(const IntervalVector& x, const IntervalVector& y, VectorDistance kind) {
  if (x.size() != y.size()) {
    fail(ErrorCode::ShapeMismatch, "interval vectors differ in feature count");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dk = std::max(std::abs(x[k].lower - y[k].lower), std::abs(x[k].upper - y[k].upper));
    acc += kind == VectorDistance::H ? dk : dk * dk;
  }
  return kind == VectorDistance::H ? acc : std::sqrt(acc);
}

double dist_curve(const IntervalCurve& x, const IntervalCurve& y, CurveDistance kind) {
  if (x.grid != y.grid || x.num_channels() != y.num_channels()) {
    fail(ErrorCode::ShapeMismatch, "curves differ in grid or channel count");
  }
  std::vector<double> gap(x.grid_size());
  double sum_sq = 0.0;
  for (std::size_t v = 0; v < x.num_channels(); ++v) {
    const auto& a = x.channels[v];
    const auto& b = y.channels[v];
    for (std::size_t t = 0; t < gap.size(); ++t) {
      const double dl = std::abs(a.lower[t] - b.lower[t]);
      const double du = std::abs(a.upper[t] - b.upper[t]);
      // FEH integrates sqrt(max(dl^2, du^2)), which equals max(dl, du).
      gap[t] = kind == CurveDistance::FH ? std::max(dl, du)
                                         : std::sqrt(std::max(dl * dl, du * du));
    }
    const double d = trapezoid(x.grid, gap);
    sum_sq += d * d;
  }
  return std::sqrt(sum_sq);
}

double interval_distance(const Observation& x, const Observation& y) {
  if (const auto* a = std::get_if<IntervalVector>(&x)) {
    const auto* b = std::get_if<IntervalVector>(&y);
    if (b == nullptr) fail(ErrorCode::ShapeMismatch, "cannot compare a vector with a curve");
    return dist_interval(*a, *b, VectorDistance::EH);
  }
  const auto* b = std::get_if<IntervalCurve>(&y);
  if (b == nullptr) fail(ErrorCode::ShapeMismatch, "cannot compare a curve with a vector");
  return dist_curve(std::get<IntervalCurve>(x), *b, CurveDistance::FEH);
}

double kernel_from_dist(double d, double gamma) {
  if (!(gamma > 0.0)) fail(ErrorCode::InvalidParameter, "gamma must be positive");
  if (!(d >= 0.0)) fail(ErrorCode::InvalidParameter, "distance must be nonnegative");
  return std::exp(-d * d / gamma);
}

PairwiseMatrix pairwise(std::span<const Observation> data, const PairwiseOptions& options) {
  if (options.kind == PairwiseKind::Kernel && !(options.gamma > 0.0)) {
    fail(ErrorCode::InvalidParameter, "gamma must be positive");
  }
  PairwiseMatrix m;
  m.n = data.size();
  m.kind = options.kind;
  m.entries.assign(m.n * m.n, 0.0);
  const double diag = options.kind == PairwiseKind::Kernel ? 1.0 : 0.0;
  parallel_for(m.n, options.jobs, [&](std::size_t i) {
    m.entries[i * m.n + i] = diag;
    for (std::size_t j = i + 1; j < m.n; ++j) {
      const double d = interval_distance(data[i], data[j]);
      m.entries[i * m.n + j] =
          options.kind == PairwiseKind::Kernel ? kernel_from_dist(d, options.gamma) : d;
    }
  });
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = i + 1; j < m.n; ++j) m.entries[j * m.n + i] = m.entries[i * m.n + j];
  return m;
}

void write_matrix_csv(std::ostream& out, const PairwiseMatrix& m,
                      std::span<const std::string> ids) {
  if (ids.size() != m.n) fail(ErrorCode::ShapeMismatch, "id count differs from matrix size");
  out << "id";
  for (const auto& id : ids) out << ',' << id;
  out << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < m.n; ++i) {
    out << ids[i];
    for (std::size_t j = 0; j < m.n; ++j) out << ',' << m(i, j);
    out << '\n';
  }
}

}  // namespace ivord
