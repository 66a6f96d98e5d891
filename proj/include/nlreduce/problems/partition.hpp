#pragma once

#include <cstddef>
#include <vector>

#include "nlreduce/linalg/vector.hpp"

namespace nlreduce::problems {

using linalg::Vector;

/// Split of z in R^n into retained variables x and eliminated variables y.
///
/// The index sets are disjoint, cover {0, ..., n-1} and are both non-empty.
/// Their order defines the order of entries in x and y.
class BlockPartition {
 public:
  /// Throws std::invalid_argument if the index sets are not a partition.
  BlockPartition(std::size_t n, std::vector<std::size_t> x_indices,
                 std::vector<std::size_t> y_indices);

  /// y = the last n_y coordinates.
  static BlockPartition trailing(std::size_t n, std::size_t n_y);
  /// y = the first n_y coordinates.
  static BlockPartition leading(std::size_t n, std::size_t n_y);

  std::size_t n() const { return n_; }
  std::size_t n_x() const { return x_.size(); }
  std::size_t n_y() const { return y_.size(); }
  const std::vector<std::size_t>& x_indices() const { return x_; }
  const std::vector<std::size_t>& y_indices() const { return y_; }

  Vector gather_x(const Vector& z) const;
  Vector gather_y(const Vector& z) const;
  Vector join(const Vector& x, const Vector& y) const;

  /// Same split with the roles of x and y exchanged.
  BlockPartition swapped() const;

  friend bool operator==(const BlockPartition&, const BlockPartition&) = default;

 private:
  std::size_t n_;
  std::vector<std::size_t> x_;
  std::vector<std::size_t> y_;
};

}  // namespace nlreduce::problems
