#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ivord {

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  double trace() const;
  /// Max absolute row sum.
  double norm_inf() const;
  double norm_frobenius() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

std::vector<double> multiply(const Matrix& a, std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

/// Lower Cholesky factor of a symmetric positive definite matrix.
class Cholesky {
 public:
  /// Throws SingularCovariance when a pivot is not positive.
  explicit Cholesky(const Matrix& a);

  std::vector<double> solve(std::span<const double> b) const;
  Matrix inverse() const;
  double log_determinant() const;

 private:
  Matrix lower_;
};

/// Eigenpairs of a symmetric matrix; values descending, vectors in columns.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};

/// Cyclic Jacobi. Each eigenvector's largest-magnitude component is made
/// positive. Throws NotSymmetric if |a_ij - a_ji| > 1e-10 * max(1, |A|).
SymmetricEigen sym_eigen(const Matrix& a);

}  // namespace ivord
