#include "nlreduce/problems/partition.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace nlreduce::problems {

BlockPartition::BlockPartition(std::size_t n, std::vector<std::size_t> x_indices,
                               std::vector<std::size_t> y_indices)
    : n_(n), x_(std::move(x_indices)), y_(std::move(y_indices)) {
  if (x_.empty() || y_.empty()) {
    throw std::invalid_argument("BlockPartition: both blocks must be non-empty");
  }
  if (x_.size() + y_.size() != n_) {
    throw std::invalid_argument("BlockPartition: n_x + n_y = " +
                                std::to_string(x_.size() + y_.size()) + " but n = " +
                                std::to_string(n_));
  }
  std::vector<bool> seen(n_, false);
  for (const auto* set : {&x_, &y_}) {
    for (std::size_t i : *set) {
      if (i >= n_) throw std::invalid_argument("BlockPartition: index " + std::to_string(i) + " out of range");
      if (seen[i]) throw std::invalid_argument("BlockPartition: index " + std::to_string(i) + " repeated");
      seen[i] = true;
    }
  }
}

BlockPartition BlockPartition::trailing(std::size_t n, std::size_t n_y) {
  if (n_y >= n) throw std::invalid_argument("BlockPartition::trailing: n_y must be < n");
  std::vector<std::size_t> x(n - n_y), y(n_y);
  std::iota(x.begin(), x.end(), 0);
  std::iota(y.begin(), y.end(), n - n_y);
  return BlockPartition(n, std::move(x), std::move(y));
}

BlockPartition BlockPartition::leading(std::size_t n, std::size_t n_y) {
  if (n_y >= n) throw std::invalid_argument("BlockPartition::leading: n_y must be < n");
  std::vector<std::size_t> x(n - n_y), y(n_y);
  std::iota(y.begin(), y.end(), 0);
  std::iota(x.begin(), x.end(), n_y);
  return BlockPartition(n, std::move(x), std::move(y));
}

Vector BlockPartition::gather_x(const Vector& z) const {
  linalg::require_size(z, n_, "BlockPartition::gather_x");
  Vector x(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) x[i] = z[x_[i]];
  return x;
}

Vector BlockPartition::gather_y(const Vector& z) const {
  linalg::require_size(z, n_, "BlockPartition::gather_y");
  Vector y(y_.size());
  for (std::size_t i = 0; i < y_.size(); ++i) y[i] = z[y_[i]];
  return y;
}

Vector BlockPartition::join(const Vector& x, const Vector& y) const {
  linalg::require_size(x, x_.size(), "BlockPartition::join x");
  linalg::require_size(y, y_.size(), "BlockPartition::join y");
  Vector z(n_);
  for (std::size_t i = 0; i < x_.size(); ++i) z[x_[i]] = x[i];
  for (std::size_t i = 0; i < y_.size(); ++i) z[y_[i]] = y[i];
  return z;
}

BlockPartition BlockPartition::swapped() const { return BlockPartition(n_, y_, x_); }

}  // namespace nlreduce::problems
