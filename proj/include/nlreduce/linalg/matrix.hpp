#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nlreduce/linalg/vector.hpp"

namespace nlreduce::linalg {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  /// Nested-list construction, one inner list per row.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> span() { return data_; }
  std::span<const double> span() const { return data_; }

  Vector row(std::size_t i) const;
  Vector col(std::size_t j) const;
  void set_col(std::size_t j, const Vector& v);

  Matrix transpose() const;
  /// Rows `r` and columns `c` of this matrix, in the given order.
  Matrix select(std::span<const std::size_t> r, std::span<const std::size_t> c) const;

  double frobenius_norm() const;

  Vector operator*(const Vector& x) const;
  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);

/// Square symmetric matrix. The input is symmetrized as (M + M^T)/2 on
/// construction, so the stored entries are exactly symmetric.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Matrix m);
  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(const Vector& d);

  std::size_t order() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }

  /// Principal submatrix on `idx`.
  SymMatrix select(std::span<const std::size_t> idx) const;

  Vector operator*(const Vector& x) const { return m_ * x; }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  Matrix m_;
};

}  // namespace nlreduce::linalg
