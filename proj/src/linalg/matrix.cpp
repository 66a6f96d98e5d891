#include "nlreduce/linalg/matrix.hpp"

#include <cmath>
#include <string>

#include "nlreduce/error.hpp"
#include "nlreduce/linalg/kernels.hpp"

namespace nlreduce::linalg {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("Matrix: " + std::to_string(data_.size()) + " entries for a " +
                            std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("Matrix::from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(std::vector<double>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                    data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)));
}

Vector Matrix::col(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_col(std::size_t j, const Vector& v) {
  require_size(v, rows_, "Matrix::set_col");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::select(std::span<const std::size_t> r, std::span<const std::size_t> c) const {
  Matrix s(r.size(), c.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) s(i, j) = (*this)(r[i], c[j]);
  return s;
}

double Matrix::frobenius_norm() const {
  double sum = 0.0;
  for (double e : data_) sum += e * e;
  return std::sqrt(sum);
}

Vector Matrix::operator*(const Vector& x) const {
  require_size(x, cols_, "Matrix::operator*");
  Vector y(rows_);
  kernels::parallel::gemv(rows_, cols_, data_, x.span(), y.span());
  return y;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw DimensionMismatch("Matrix::operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw DimensionMismatch("Matrix::operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& e : data_) e *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("Matrix product: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  kernels::parallel::gemm(a.rows(), a.cols(), b.cols(), a.span(), b.span(), c.span());
  return c;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

SymMatrix::SymMatrix(Matrix m) : m_(std::move(m)) {
  if (!m_.square()) throw DimensionMismatch("SymMatrix: matrix is not square");
  const std::size_t n = m_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (m_(i, j) + m_(j, i));
      m_(i, j) = avg;
      m_(j, i) = avg;
    }
  }
}

SymMatrix SymMatrix::identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }

SymMatrix SymMatrix::diagonal(const Vector& d) { return SymMatrix(Matrix::diagonal(d)); }

SymMatrix SymMatrix::select(std::span<const std::size_t> idx) const {
  return SymMatrix(m_.select(idx, idx));
}

}  // namespace nlreduce::linalg
