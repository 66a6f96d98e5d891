#include "nlreduce/linalg/vector.hpp"

#include <cmath>
#include <string>

#include "nlreduce/error.hpp"
#include "nlreduce/linalg/kernels.hpp"

namespace nlreduce::linalg {

Vector& Vector::operator+=(const Vector& other) {
  require_size(other, size(), "Vector::operator+=");
  kernels::parallel::axpy(1.0, other.span(), span());
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_size(other, size(), "Vector::operator-=");
  kernels::parallel::axpy(-1.0, other.span(), span());
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& e : data_) e *= s;
  return *this;
}

bool Vector::all_finite() const {
  for (double e : data_) {
    if (!std::isfinite(e)) return false;
  }
  return true;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= -1.0; }
Vector operator*(double s, Vector a) { return a *= s; }

double dot(const Vector& a, const Vector& b) {
  require_size(b, a.size(), "dot");
  return kernels::parallel::dot(a.span(), b.span());
}

double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vector& a) {
  double m = 0.0;
  for (double e : a) m = std::max(m, std::abs(e));
  return m;
}

void axpy(double alpha, const Vector& x, Vector& y) {
  require_size(x, y.size(), "axpy");
  kernels::parallel::axpy(alpha, x.span(), y.span());
}

void require_size(const Vector& v, std::size_t n, std::string_view context) {
  if (v.size() != n) {
    throw DimensionMismatch(std::string(context) + ": expected dimension " + std::to_string(n) +
                            ", got " + std::to_string(v.size()));
  }
}

}  // namespace nlreduce::linalg
